"""Dealer and combiner flows for graph secrets.

A dealer turns a graph (or its coloring, or a bit string carried as a graph)
into a digit sequence, shares it with Shamir or KGH, and stamps every share
with a :class:`SecretDescriptor`.  The combiner reverses this and accepts the
result only if it decodes inside the secret space and passes the agreed
restriction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .codec import (
    BitPayload,
    DigitString,
    decode_graph,
    digit_radices,
    encode_graph,
    graph_to_number,
    mixed_radix_digits,
    mixed_radix_value,
    number_to_graph,
    space_size,
)
from .errors import GraphShareError, OutOfSpaceError, PaddingViolationError
from .graph import (
    ColoredGraph,
    Coloring,
    Graph,
    Predicate,
    evaluate_predicate,
    is_proper_coloring,
)
from .schemes import (
    PRODUCTION_PRIME,
    KghParams,
    RandomSource,
    SecretDescriptor,
    ShamirParams,
    Share,
    kgh_reconstruct,
    kgh_split,
    pack_value,
    shamir_reconstruct,
    shamir_split,
    unpack_value,
)


@dataclass(frozen=True)
class Shamir:
    t: int
    n: int
    prime: int = PRODUCTION_PRIME

    def params(self) -> ShamirParams:
        return ShamirParams(self.t, self.n, self.prime)


@dataclass(frozen=True)
class Kgh:
    n: int


Scheme = Union[Shamir, Kgh]


@dataclass(frozen=True)
class Dealing:
    shares: tuple[Share, ...]
    descriptor: SecretDescriptor
    predicate: Predicate

    def subset(self, indices: Sequence[int]) -> list[Share]:
        by_index = {s.index: s for s in self.shares}
        return [by_index[i] for i in indices]


@dataclass(frozen=True)
class VerificationReport:
    reconstructed: bool
    predicate_passed: bool
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "accepted" if self.reconstructed and self.predicate_passed else "rejected"

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"

    def __str__(self) -> str:
        lines = [
            f"verdict: {self.verdict}",
            f"reconstructed: {'yes' if self.reconstructed else 'no'}",
            f"predicate_passed: {'yes' if self.predicate_passed else 'no'}",
        ]
        if self.reason:
            lines.append(f"reason: {self.reason}")
        return "\n".join(lines)


def radices_for(desc: SecretDescriptor) -> tuple[int, ...]:
    """Per-position radices of the digit sequence a descriptor stands for."""
    if desc.kind == "colored_graph":
        return digit_radices(desc.n, desc.k)
    if desc.kind in ("structure", "number_as_graph"):
        return digit_radices(desc.n, 1)
    if desc.kind == "coloring":
        return (desc.k,) * desc.n
    raise ValueError(f"descriptor kind {desc.kind!r} has no graph digit space")


def _deal(digits: Sequence[int], desc: SecretDescriptor, scheme: Scheme, rng: RandomSource) -> tuple[Share, ...]:
    radices = radices_for(desc)
    if isinstance(scheme, Kgh):
        return tuple(kgh_split(digits, KghParams(scheme.n, radices), rng, desc))
    params = scheme.params()
    blocks = pack_value(mixed_radix_value(digits, radices), space_size(radices), params.block_bits)
    return tuple(shamir_split(blocks, params, rng, desc))


def recover_digits(shares: Sequence[Share]) -> tuple[int, ...]:
    """Pool shares and return the secret digit sequence.

    Raises OutOfSpaceError when a Shamir reconstruction lands outside the
    digit space; other failures propagate from the schemes.
    """
    if not shares:
        raise GraphShareError("no shares given")
    desc = shares[0].descriptor
    radices = radices_for(desc)
    if shares[0].scheme == "kgh":
        return tuple(kgh_reconstruct(shares))
    blocks = shamir_reconstruct(shares)
    value = unpack_value(blocks, space_size(radices), shares[0].params.block_bits)
    return mixed_radix_digits(value, radices)


def share_colored_graph(cg: ColoredGraph, scheme: Scheme, predicate: Predicate, rng: RandomSource) -> Dealing:
    if not evaluate_predicate(predicate, cg):
        raise ValueError(f"secret does not satisfy its own restriction {predicate}")
    desc = SecretDescriptor("colored_graph", cg.n, cg.k, None, str(predicate))
    return Dealing(_deal(encode_graph(cg).digits, desc, scheme, rng), desc, predicate)


def share_structure(g: Graph, scheme: Scheme, predicate: Predicate, rng: RandomSource) -> Dealing:
    if not evaluate_predicate(predicate, ColoredGraph.uncolored(g)):
        raise ValueError(f"secret does not satisfy its own restriction {predicate}")
    desc = SecretDescriptor("structure", g.n, 1, None, str(predicate))
    return Dealing(_deal(g.bits, desc, scheme, rng), desc, predicate)


def share_coloring(
    coloring: Coloring,
    scheme: Scheme,
    rng: RandomSource,
    predicate: Predicate = Predicate("any"),
) -> Dealing:
    # Only the predicate kind is stamped on shares; a reference structure
    # never travels with coloring shares.
    if coloring.k < 2:
        raise ValueError("palette of size 1 carries no coloring to share")
    if predicate.kind not in ("any", "proper_coloring"):
        raise ValueError(f"restriction {predicate} needs a structure; coloring shares carry none")
    desc = SecretDescriptor("coloring", len(coloring), coloring.k, None, predicate.kind)
    return Dealing(_deal(coloring.colors, desc, scheme, rng), desc, predicate)


def share_number_as_graph(
    p: BitPayload,
    scheme: Scheme,
    rng: RandomSource,
    predicate: Predicate = Predicate("any"),
) -> Dealing:
    g = number_to_graph(p)
    if not evaluate_predicate(predicate, ColoredGraph.uncolored(g)):
        raise ValueError(f"carrier graph does not satisfy {predicate}")
    desc = SecretDescriptor("number_as_graph", g.n, 1, p.length, str(predicate))
    return Dealing(_deal(g.bits, desc, scheme, rng), desc, predicate)


Secret = Union[ColoredGraph, Coloring, BitPayload]


def reconstruct_and_verify(
    shares: Sequence[Share], reference: Graph | None = None
) -> tuple[Secret | None, VerificationReport]:
    """Combine shares and check the result against the dealing's restriction.

    ``reference`` is the publicly known structure a coloring secret is
    checked against; without it a coloring is checked on the edgeless graph.
    The secret returned depends on the descriptor kind: a ColoredGraph for
    graph kinds, a Coloring for coloring dealings, a BitPayload for numbers.
    """
    try:
        digits = recover_digits(shares)
    except OutOfSpaceError:
        return None, VerificationReport(True, False, "out of secret space")
    except (GraphShareError, ValueError) as exc:
        return None, VerificationReport(False, False, f"reconstruction failed: {exc}")

    desc = shares[0].descriptor
    predicate = Predicate.parse(desc.predicate)
    if predicate.kind == "proper_coloring" and desc.kind == "coloring" and reference is not None:
        predicate = Predicate("proper_coloring", reference)

    secret: Secret
    if desc.kind == "colored_graph":
        cg = decode_graph(DigitString.from_digits(digits, desc.n, desc.k))
        secret = cg
    elif desc.kind == "structure":
        cg = ColoredGraph.uncolored(Graph(desc.n, digits))
        secret = cg
    elif desc.kind == "coloring":
        secret = Coloring(desc.k, digits)
        cg = ColoredGraph(reference if reference is not None else Graph.empty(desc.n), secret)
    else:
        g = Graph(desc.n, digits)
        cg = ColoredGraph.uncolored(g)
        try:
            secret = graph_to_number(g, desc.length)
        except PaddingViolationError as exc:
            return None, VerificationReport(True, False, f"padding violated: {exc}")

    try:
        passed = evaluate_predicate(predicate, cg)
    except GraphShareError as exc:
        return None, VerificationReport(True, False, str(exc))
    if not passed:
        return None, VerificationReport(True, False, f"restriction '{predicate}' not satisfied")
    return secret, VerificationReport(True, True)


def randomize_share(share: Share, rng: RandomSource) -> Share:
    """Replace a share's payload with uniform noise.

    For KGH this moves the reconstructed secret to a uniformly random point
    of the digit space; it is the tampering model used in detection-rate
    experiments.
    """
    if share.scheme == "kgh":
        payload = tuple(rng.randbelow(r) for r in share.params.radices)
    else:
        payload = tuple(rng.randbelow(share.params.prime) for _ in share.payload)
    return Share(share.scheme, share.index, payload, share.params, share.descriptor)


def shift_attack(share: Share, constant: int) -> Share:
    """Add ``constant`` to every color digit of a KGH coloring share."""
    if share.scheme != "kgh" or share.descriptor.kind != "coloring":
        raise ValueError("shift attack applies to kgh coloring shares only")
    k = share.descriptor.k
    payload = tuple((d + constant) % k for d in share.payload)
    return Share(share.scheme, share.index, payload, share.params, share.descriptor)


def multi_secret_share(
    cg: ColoredGraph, group_a: Scheme, group_b: Scheme, rng: RandomSource
) -> tuple[Dealing, Dealing]:
    """Deal the structure to group A and the coloring to group B.

    Each group draws from its own child source, so A's shares do not depend
    on the coloring.
    """
    if cg.k < 2:
        raise ValueError("multi-secret sharing needs a coloring with k >= 2")
    rng_a, rng_b = rng.spawn(), rng.spawn()
    structure = share_structure(cg.graph, group_a, Predicate("any"), rng_a)
    coloring = share_coloring(cg.coloring, group_b, rng_b)
    return structure, coloring


def multi_secret_combine(structure: Graph, coloring: Coloring) -> tuple[ColoredGraph, bool]:
    if len(coloring) != structure.n:
        raise ValueError(
            f"coloring has {len(coloring)} entries, structure has {structure.n} vertices"
        )
    cg = ColoredGraph(structure, coloring)
    return cg, is_proper_coloring(cg)


@dataclass(frozen=True)
class LeveledDealing:
    levels: tuple[Dealing, ...]
    thresholds: tuple[int, ...]
    n_participants: int

    def composite_share(self, index: int) -> tuple[Share, ...]:
        """Everything participant ``index`` holds, one component per level."""
        return tuple(level.subset([index])[0] for level in self.levels)

    def recover(self, composites: Sequence[Sequence[Share]]) -> list[DigitString]:
        """Levels recoverable from the pooled composite shares, lowest first."""
        out = []
        for lvl, (dealing, t) in enumerate(zip(self.levels, self.thresholds)):
            if len(composites) < t:
                break
            parts = [c[lvl] for c in composites]
            desc = dealing.descriptor
            out.append(DigitString.from_digits(recover_digits(parts), desc.n, desc.k))
        return out


def leveled_share(
    payloads: Sequence[DigitString],
    thresholds: Sequence[int],
    n_participants: int,
    rng: RandomSource,
    prime: int = PRODUCTION_PRIME,
) -> LeveledDealing:
    """Share level l with threshold t_l so that more cooperating participants
    recover more levels. Levels are independent Shamir instances."""
    thresholds = tuple(thresholds)
    if len(payloads) != len(thresholds):
        raise ValueError("one threshold per payload is required")
    if any(a >= b for a, b in zip(thresholds, thresholds[1:])):
        raise ValueError(f"thresholds must be strictly increasing, got {thresholds}")
    if thresholds and thresholds[-1] > n_participants:
        raise ValueError("highest threshold exceeds the number of participants")
    levels = []
    for d, t in zip(payloads, thresholds):
        desc = SecretDescriptor("colored_graph", d.n, d.k, None, "any")
        levels.append(Dealing(_deal(d.digits, desc, Shamir(t, n_participants, prime), rng), desc, Predicate()))
    return LeveledDealing(tuple(levels), thresholds, n_participants)

