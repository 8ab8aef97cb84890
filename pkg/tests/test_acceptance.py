"""Exit criteria for the toolkit.

Each check prints one PASS/FAIL line (also collected into the terminal
summary).  Tolerances are fixed here: zero everywhere except the tamper
detection rate, which must land within 3 percentage points of the census
prediction.
"""
import itertools
import random
import shutil
from collections import Counter

import pytest

from graphshare.analysis import (
    census,
    chromatic_number,
    connected_count_recurrence,
    find_coloring,
    secrecy_audit,
)
from graphshare.cli import main
from graphshare.codec import (
    BitPayload,
    decode_graph,
    digits_to_integer,
    encode_graph,
    gamma,
    graph_to_number,
    integer_to_digits,
    number_to_graph,
)
from graphshare.graph import (
    ColoredGraph,
    Coloring,
    Graph,
    Predicate,
    is_proper_coloring,
    partition_of,
)
from graphshare.protocol import (
    Kgh,
    leveled_share,
    multi_secret_combine,
    multi_secret_share,
    randomize_share,
    reconstruct_and_verify,
    share_colored_graph,
    share_coloring,
    shift_attack,
)
from graphshare.schemes import (
    KghParams,
    RandomSource,
    ScriptedSource,
    ShamirParams,
    kgh_reconstruct,
    kgh_split,
    shamir_reconstruct,
    shamir_split,
)

from conftest import ACCEPTANCE_LINES, EXAMPLE1_COLORS, EXAMPLE1_EDGES, TESTDATA

DETECTION_TOLERANCE = 0.03


def example1():
    return ColoredGraph(Graph.from_edges(4, EXAMPLE1_EDGES), Coloring(3, EXAMPLE1_COLORS))


def random_colored_graph(rnd, max_n, max_k):
    n = rnd.randint(1, max_n)
    k = rnd.randint(1, max_k)
    bits = tuple(rnd.getrandbits(1) for _ in range(n * (n - 1) // 2))
    return ColoredGraph(Graph(n, bits), Coloring(k, tuple(rnd.randrange(k) for _ in range(n))))


def criterion_1():
    cg = example1()
    d = encode_graph(cg)
    assert d.digits == (0, 1, 1, 1, 0, 1, 0, 0, 2, 1)
    assert str(d) == "0111010021"
    assert decode_graph(d) == cg
    return "m = 0111010021, decode exact"


def criterion_2():
    expected = [1, 2, 8, 64, 1024]
    enumerated = [
        sum(1 for _ in itertools.product((0, 1), repeat=n * (n - 1) // 2)) for n in range(1, 6)
    ]
    assert enumerated == expected
    assert [gamma(n) for n in range(1, 6)] == expected
    return "gamma(1..5) = 1, 2, 8, 64, 1024"


def criterion_3():
    rnd = random.Random(3)
    for _ in range(1000):
        cg = random_colored_graph(rnd, 32, 16)
        v = digits_to_integer(encode_graph(cg))
        assert decode_graph(integer_to_digits(v, cg.n, cg.k)) == cg
    exhaustive = 0
    for n in range(1, 5):
        for k in range(1, 4):
            colorings = list(itertools.product(range(k), repeat=n)) if k > 1 else [(0,) * n]
            seen = set()
            for bits in itertools.product((0, 1), repeat=n * (n - 1) // 2):
                for colors in colorings:
                    cg = ColoredGraph(Graph(n, bits), Coloring(k, colors))
                    v = digits_to_integer(encode_graph(cg))
                    assert decode_graph(integer_to_digits(v, n, k)) == cg
                    seen.add(v)
                    exhaustive += 1
            assert len(seen) == (2 ** (n * (n - 1) // 2)) * (k**n if k > 1 else 1)
    return f"1000 random + {exhaustive} exhaustive roundtrips, 0 failures"


def criterion_4():
    rnd = random.Random(4)
    for _ in range(1000):
        length = rnd.randint(0, 496)
        p = BitPayload(tuple(rnd.getrandbits(1) for _ in range(length)))
        assert graph_to_number(number_to_graph(p), p.length) == p
    return "1000 payloads (l <= 496), 0 failures"


def criterion_5():
    p, params = 5, ShamirParams(2, 3, 5)
    for secret in range(p):
        views = [Counter() for _ in range(3)]
        for c in range(p):
            shares = shamir_split([secret], params, ScriptedSource([c]))
            for pair in itertools.combinations(shares, 2):
                assert shamir_reconstruct(list(pair)) == [secret]
            for i, s in enumerate(shares):
                views[i][s.payload] += 1
        assert all(v == Counter({(y,): 1 for y in range(p)}) for v in views)
    report = secrecy_audit(params)
    assert report.perfect
    worst = max(s.max_distance for s in report.subsets)
    assert worst == 0
    return f"all 2-subsets recover all secrets; single-share distance {worst}"


def criterion_6():
    params = KghParams(2, (3, 3, 3))
    space = list(itertools.product(range(3), repeat=3))
    for secret in space:
        views = [Counter(), Counter()]
        for choice in space:
            shares = kgh_split(secret, params, ScriptedSource(choice))
            assert tuple(kgh_reconstruct(shares)) == secret
            for i, s in enumerate(shares):
                views[i][s.payload] += 1
        assert all(v == Counter({x: 1 for x in space}) for v in views)
    report = secrecy_audit(params)
    assert report.perfect
    worst = max(s.max_distance for s in report.subsets)
    assert worst == 0
    return f"2-of-2 recovery exact; single-share distance {worst}"


def random_proper_coloring(rnd, g, k):
    """Randomized greedy; falls back to a relabeled exact coloring."""
    for _ in range(200):
        colors = [None] * g.n
        adj = g.adjacency()
        ok = True
        for v in rnd.sample(range(g.n), g.n):
            allowed = [c for c in range(k) if all(colors[w] != c for w in adj[v])]
            if not allowed:
                ok = False
                break
            colors[v] = rnd.choice(allowed)
        if ok:
            return Coloring(k, tuple(colors))
    sigma = rnd.sample(range(k), k)
    return Coloring(k, tuple(sigma[c] for c in find_coloring(g, k)))


def criterion_7():
    rnd = random.Random(7)
    changed = 0
    for trial in range(100):
        n = rnd.randint(1, 10)
        density = rnd.random() * 0.5
        g = Graph(n, tuple(int(rnd.random() < density) for _ in range(n * (n - 1) // 2)))
        k = rnd.randint(max(2, chromatic_number(g)), 8)
        coloring = random_proper_coloring(rnd, g, k)
        constant = rnd.randint(-3 * k, 3 * k)
        parts = rnd.randint(2, 4)
        dealing = share_coloring(coloring, Kgh(parts), RandomSource.from_seed(trial))
        attacker = rnd.randint(1, parts)
        attacked = [shift_attack(s, constant) if s.index == attacker else s for s in dealing.shares]
        result = Coloring(k, tuple(kgh_reconstruct(attacked)))
        assert partition_of(result) == partition_of(coloring)
        assert is_proper_coloring(ColoredGraph(g, result))
        if constant % k != 0:
            assert result != coloring
            changed += 1
        else:
            assert result == coloring
    return f"100 attacks, partitions and properness preserved, {changed} assignments changed"


def criterion_8():
    for n in range(1, 7):
        r = census(n, Predicate("connected"))
        assert r.valid == connected_count_recurrence(n)
    r3, r4 = census(3, Predicate("connected")), census(4, Predicate("connected"))
    assert (r3.valid, r3.total) == (4, 8)
    assert (r4.valid, r4.total) == (38, 64)
    return "census = recurrence for n <= 6; 4/8 at n=3, 38/64 at n=4"


def criterion_9():
    predicted = float(census(4, Predicate("connected")).rejection_rate)
    assert predicted == 0.40625
    secret = ColoredGraph.uncolored(Graph.from_edges(4, [(1, 2), (2, 3), (3, 4)]))
    rng = RandomSource.from_seed(9)
    trials, rejected = 10_000, 0
    for _ in range(trials):
        dealing = share_colored_graph(secret, Kgh(3), Predicate("connected"), rng)
        victim = rng.randbelow(3)
        shares = list(dealing.shares)
        shares[victim] = randomize_share(shares[victim], rng)
        _, report = reconstruct_and_verify(shares)
        rejected += report.verdict == "rejected"
    rate = rejected / trials
    assert abs(rate - predicted) <= DETECTION_TOLERANCE
    return f"rejection rate {rate:.4f} vs predicted {predicted:.5f} (tolerance {DETECTION_TOLERANCE})"


def criterion_10():
    cg = example1()
    a, b = multi_secret_share(cg, Kgh(2), Kgh(2), RandomSource.from_seed(10))
    holders = [("A", s) for s in a.shares] + [("B", s) for s in b.shares]
    checked = 0
    for size in range(len(holders) + 1):
        for subset in itertools.combinations(holders, size):
            a_part = [s for g, s in subset if g == "A"]
            b_part = [s for g, s in subset if g == "B"]
            structure = reconstruct_and_verify(a_part)[0] if a_part else None
            coloring = reconstruct_and_verify(b_part)[0] if b_part else None
            assert (structure is not None) == (len(a_part) == 2)
            assert (coloring is not None) == (len(b_part) == 2)
            if structure is not None:
                assert structure == ColoredGraph.uncolored(cg.graph)
            if coloring is not None:
                assert coloring == cg.coloring
            if structure is not None and coloring is not None:
                combined, proper = multi_secret_combine(structure.graph, coloring)
                assert combined == cg and proper
            checked += 1

    levels = [
        encode_graph(ColoredGraph.uncolored(Graph.empty(2))),
        encode_graph(ColoredGraph.uncolored(Graph.from_edges(3, [(1, 2), (2, 3)]))),
        encode_graph(ColoredGraph.uncolored(cg.graph)),
        encode_graph(cg),
    ]
    ld = leveled_share(levels, (1, 2, 3, 4), 4, RandomSource.from_seed(11))
    for size in range(5):
        for subset in itertools.combinations(range(1, 5), size):
            got = ld.recover([ld.composite_share(i) for i in subset])
            assert got == levels[:size]
            checked += 1
    return f"{checked} subsets enumerated, 0 failures"


def criterion_11(tmp_path):
    out_dir = tmp_path / "shares"
    args = ["split", str(TESTDATA / "example1.gsf"), "--scheme", "shamir", "--t", "2", "--n", "3",
            "--predicate", "proper_coloring", "--seed", "2", "--out-dir", str(out_dir)]
    assert main(args) == 0
    for golden in sorted((TESTDATA / "shamir_example1").iterdir()):
        assert (out_dir / golden.name).read_bytes() == golden.read_bytes()
    out = tmp_path / "out.gsf"
    assert main(["reconstruct", str(out_dir / "share_1.gsh"), str(out_dir / "share_2.gsh"), "--out", str(out)]) == 0
    assert out.read_bytes() == (TESTDATA / "example1.gsf").read_bytes()
    assert main(["reconstruct", str(out_dir / "share_1.gsh")]) == 2

    kgh_dir = tmp_path / "kgh"
    shutil.copytree(TESTDATA / "kgh_example1", kgh_dir)
    victim = kgh_dir / "share_1.gsh"
    head, payload = victim.read_text().rsplit("payload=", 1)
    digits = payload.strip().split(",")
    for pos in (1, 3):  # isolate vertex 1
        digits[pos] = str(1 - int(digits[pos]))
    victim.write_text(head + "payload=" + ",".join(digits) + "\n")
    assert main(["reconstruct", *map(str, sorted(kgh_dir.glob("*.gsh"))), "--out", str(tmp_path / "x.gsf")]) == 3
    assert not (tmp_path / "x.gsf").exists()
    return "golden bytes reproduced; exit codes 0 / 2 / 3 as contracted"


CRITERIA = [
    (1, "golden encoding", criterion_1),
    (2, "gamma formula", criterion_2),
    (3, "codec roundtrips", criterion_3),
    (4, "padding roundtrip", criterion_4),
    (5, "shamir correctness and perfectness", criterion_5),
    (6, "kgh correctness and perfectness", criterion_6),
    (7, "shift attack invariance", criterion_7),
    (8, "census cross-check", criterion_8),
    (9, "restriction verification rate", criterion_9),
    (10, "multi-secret and leveled", criterion_10),
    (11, "cli end-to-end", criterion_11),
]


@pytest.mark.parametrize("number, name, check", CRITERIA, ids=[f"AC{n}" for n, _, _ in CRITERIA])
def test_acceptance(number, name, check, tmp_path, capsys):
    try:
        detail = check(tmp_path) if number == 11 else check()
    except Exception as exc:
        line = f"[FAIL] {number}: {name}: {type(exc).__name__}: {exc}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        raise
    line = f"[PASS] {number}: {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    with capsys.disabled():
        print("\n" + line)
