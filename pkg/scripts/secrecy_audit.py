"""Exact posterior audit of the sharing schemes over tiny spaces.

The last row shows what restricting the secret to connected graphs costs:
the scheme stays perfect relative to its prior, but the prior itself is
only half the digit space.
"""
from graphshare.analysis import restricted_space, secrecy_audit
from graphshare.graph import Predicate
from graphshare.schemes import KghParams, ShamirParams

cases = [
    ("kgh radices (3,3), 2 parties", KghParams(2, (3, 3)), None),
    ("kgh radices (3,3,3), 2 parties", KghParams(2, (3, 3, 3)), None),
    ("shamir p=5, t=2, n=3", ShamirParams(2, 3, 5), None),
    ("shamir p=7, t=3, n=4", ShamirParams(3, 4, 7), None),
    ("kgh over connected 3-vertex graphs", KghParams(2, (2, 2, 2)), restricted_space(3, Predicate("connected"))),
]
for label, params, space in cases:
    r = secrecy_audit(params, space)
    print(f"{label}")
    print(f"  secrets {r.secret_space}/{r.digit_space}, dealer choices {r.dealer_choices}, "
          f"unauthorized subsets {len(r.subsets)}")
    print(f"  perfect={r.perfect} reduced_entropy={r.reduced_entropy} max_posterior={r.max_posterior}")
