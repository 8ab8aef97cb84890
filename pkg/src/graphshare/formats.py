"""Text file formats.

GSF/1 (graph)::

    GSF 1 <n> <k>
    <n(n-1)/2 edge bits as 0/1 characters, lower-triangle order>
    <n space-separated colors>          (only when k > 1)

GSH/1 (share): ``key=value`` lines in a fixed order.  Shamir payloads are
comma-separated lowercase hexadecimal field elements, most significant block
first; KGH payloads are comma-separated decimal digits.
"""
from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .codec import space_size
from .errors import FormatError
from .graph import ColoredGraph, Coloring, Graph, Predicate, triangle_size
from .protocol import radices_for
from .schemes import (
    PRODUCTION_PRIME,
    TEST_PRIMES,
    KghParams,
    SecretDescriptor,
    ShamirParams,
    Share,
    block_count,
)

GSF_MAGIC = "GSF"
GSH_FORMAT = "GSH/1"


def _split_lines(text: str) -> list[str]:
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    for no, line in enumerate(lines, start=1):
        if line != line.rstrip() or "\r" in line:
            raise FormatError("trailing whitespace", no)
    return lines


def _int(token: str, what: str, line: int) -> int:
    if not token.isdigit() or (len(token) > 1 and token[0] == "0"):
        raise FormatError(f"{what} must be a canonical non-negative integer, got {token!r}", line)
    return int(token)


def render_gsf(cg: ColoredGraph) -> str:
    lines = [f"{GSF_MAGIC} 1 {cg.n} {cg.k}", "".join(str(b) for b in cg.graph.bits)]
    if cg.k > 1:
        lines.append(" ".join(str(c) for c in cg.coloring.colors))
    return "\n".join(lines) + "\n"


def parse_gsf(text: str) -> ColoredGraph:
    lines = _split_lines(text)
    header = lines[0].split(" ")
    if len(header) != 4 or header[0] != GSF_MAGIC or header[1] != "1":
        raise FormatError("expected header 'GSF 1 <n> <k>'", 1)
    n = _int(header[2], "vertex count", 1)
    k = _int(header[3], "palette size", 1)
    if n < 1 or k < 1:
        raise FormatError("vertex count and palette size must be >= 1", 1)
    want = 3 if k > 1 else 2
    if len(lines) != want:
        raise FormatError(f"expected {want} lines for k={k}, got {len(lines)}", min(len(lines), want) + 1)
    bits = lines[1]
    if len(bits) != triangle_size(n) or any(ch not in "01" for ch in bits):
        raise FormatError(f"expected {triangle_size(n)} characters of 0/1", 2)
    graph = Graph(n, tuple(int(ch) for ch in bits))
    if k == 1:
        return ColoredGraph.uncolored(graph)
    tokens = lines[2].split(" ")
    if len(tokens) != n:
        raise FormatError(f"expected {n} colors", 3)
    colors = tuple(_int(t, "color", 3) for t in tokens)
    for c in colors:
        if c >= k:
            raise FormatError(f"color {c} outside Z_{k}", 3)
    return ColoredGraph(graph, Coloring(k, colors))


def _radix_description(radices: tuple[int, ...]) -> str:
    runs: list[list[int]] = []
    for r in radices:
        if runs and runs[-1][0] == r:
            runs[-1][1] += 1
        else:
            runs.append([r, 1])
    return ",".join(f"{r}x{c}" for r, c in runs)


def _parse_radices(text: str, line: int) -> tuple[int, ...]:
    out: list[int] = []
    if not text:
        return ()
    for run in text.split(","):
        r, sep, c = run.partition("x")
        if not sep:
            raise FormatError(f"bad radix run {run!r}", line)
        out.extend([_int(r, "radix", line)] * _int(c, "run length", line))
    return tuple(out)


GRAPH_KINDS = ("structure", "coloring", "colored_graph", "number_as_graph")


def render_gsh(share: Share) -> str:
    desc = share.descriptor
    if desc.kind not in GRAPH_KINDS:
        raise ValueError(f"share kind {desc.kind!r} has no file representation")
    fields = [("format", GSH_FORMAT), ("scheme", share.scheme)]
    if share.scheme == "shamir":
        p = share.params.prime
        fields += [("mode", "test" if p in TEST_PRIMES else "production"), ("prime", str(p))]
        threshold = share.params.t
        payload = ",".join(format(x, "x") for x in share.payload)
    else:
        fields += [("mode", "production"), ("radices", _radix_description(share.params.radices))]
        threshold = share.params.n_participants
        payload = ",".join(str(x) for x in share.payload)
    fields += [
        ("participant_index", str(share.index)),
        ("threshold", str(threshold)),
        ("n_participants", str(share.params.n_participants)),
        ("kind", desc.kind),
        ("n", str(desc.n)),
        ("k", str(desc.k)),
    ]
    if desc.kind == "number_as_graph":
        fields.append(("length", str(desc.length)))
    fields += [("predicate", desc.predicate), ("payload", payload)]
    return "".join(f"{k}={v}\n" for k, v in fields)


def parse_gsh(text: str) -> Share:
    lines = _split_lines(text)
    values: dict[str, tuple[str, int]] = {}
    for no, line in enumerate(lines, start=1):
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError("expected key=value", no)
        if key in values:
            raise FormatError(f"duplicate key {key!r}", no)
        values[key] = (value, no)

    def take(key: str) -> tuple[str, int]:
        if key not in values:
            raise FormatError(f"missing key {key!r}")
        return values.pop(key)

    fmt, no = take("format")
    if fmt != GSH_FORMAT:
        raise FormatError(f"unsupported format {fmt!r}", no)
    scheme, no = take("scheme")
    if scheme not in ("shamir", "kgh"):
        raise FormatError(f"unknown scheme {scheme!r}", no)
    mode, mode_no = take("mode")
    value, no = take("participant_index")
    index = _int(value, "participant_index", no)
    value, threshold_no = take("threshold")
    threshold = _int(value, "threshold", threshold_no)
    value, no = take("n_participants")
    n_participants = _int(value, "n_participants", no)
    kind, kind_no = take("kind")
    if kind not in GRAPH_KINDS:
        raise FormatError(f"unknown kind {kind!r}", kind_no)
    value, no = take("n")
    n = _int(value, "n", no)
    value, no = take("k")
    k = _int(value, "k", no)
    length = None
    if kind == "number_as_graph":
        value, no = take("length")
        length = _int(value, "length", no)
    predicate, pred_no = take("predicate")
    if n < 1 or k < 1:
        raise FormatError("n and k must be >= 1", no)
    try:
        Predicate.parse(predicate)
        desc = SecretDescriptor(kind, n, k, length, predicate)
        radices = radices_for(desc)
    except ValueError as exc:
        raise FormatError(str(exc), pred_no) from None

    payload_text, payload_no = take("payload")
    try:
        if scheme == "shamir":
            prime_text, prime_no = take("prime")
            prime = _int(prime_text, "prime", prime_no)
            expected_mode = "test" if prime in TEST_PRIMES else "production"
            if prime != PRODUCTION_PRIME and prime not in TEST_PRIMES:
                raise FormatError(f"unsupported prime {prime}", prime_no)
            if mode != expected_mode:
                raise FormatError(f"mode must be {expected_mode!r} for prime {prime}", mode_no)
            params = ShamirParams(threshold, n_participants, prime)
            tokens = payload_text.split(",")
            want = block_count(space_size(radices), params.block_bits)
            if len(tokens) != want:
                raise FormatError(f"expected {want} payload blocks, got {len(tokens)}", payload_no)
            payload = []
            for tok in tokens:
                if not tok or any(ch not in "0123456789abcdef" for ch in tok) or (len(tok) > 1 and tok[0] == "0"):
                    raise FormatError(f"bad hexadecimal block {tok!r}", payload_no)
                payload.append(int(tok, 16))
            if any(x >= prime for x in payload):
                raise FormatError("payload block outside the field", payload_no)
        else:
            rad_text, rad_no = take("radices")
            if mode != "production":
                raise FormatError("kgh shares have no test mode", mode_no)
            if _parse_radices(rad_text, rad_no) != radices:
                raise FormatError("radices do not match kind, n and k", rad_no)
            if threshold != n_participants:
                raise FormatError("kgh threshold must equal n_participants", threshold_no)
            params = KghParams(n_participants, radices)
            tokens = payload_text.split(",") if payload_text else []
            if len(tokens) != len(radices):
                raise FormatError(f"expected {len(radices)} payload digits, got {len(tokens)}", payload_no)
            payload = [_int(tok, "digit", payload_no) for tok in tokens]
            for d, r in zip(payload, radices):
                if d >= r:
                    raise FormatError(f"digit {d} outside radix {r}", payload_no)
        if values:
            key, (_, no) = next(iter(values.items()))
            raise FormatError(f"unknown key {key!r}", no)
        return Share(scheme, index, tuple(payload), params, desc)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def read_text(path: str | os.PathLike) -> str:
    with open(path, newline="") as fh:
        return fh.read()
