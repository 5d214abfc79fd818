"""The vector inequality (alpha), certificate verification, and the
equivalence report between the inequality and its three layered
certificate conditions.

(alpha) says: every feasible sample point x (x in C with G(x) in -S) has
F(x) - L(x) + y outside -int K.  A certificate for condition i is a set of
operators whose recomputed value set W leaves y outside W - int K; finding
one proves (alpha), and a verified certificate together with a false
(alpha) would falsify the implementation, not the data — that combination
aborts with a reproducer.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence

from .cones import (
    Cone,
    DimensionError,
    LinOp,
    PointClass,
    PosOp,
    classify_point,
)
from .numeric import Number, Vec, encode_mat, encode_vec, vec_sub
from .order_sets import RegionLabel, Tag
from .conjugate import (
    Certificate,
    SearchConfig,
    beta_value_set,
    script_A_membership,
)

__all__ = [
    "Certificate",
    "EmptyFeasibleSet",
    "FarkasQuery",
    "HardFailure",
    "alpha_holds",
    "convert_certificate",
    "farkas_equivalence_report",
    "feasible_points",
    "verify_certificate",
]


class EmptyFeasibleSet(ValueError):
    """No sample point is feasible (or none of them is in dom F)."""


class HardFailure(RuntimeError):
    """A verified certificate coexists with a false (alpha): the
    implementation contradicts weak duality.  Carries a reproducer dict."""

    def __init__(self, message: str, reproducer: dict):
        super().__init__(message)
        self.reproducer = reproducer


class FarkasQuery:
    """One (L, y) query against condition ``index``."""

    __slots__ = ("L", "y", "index")

    def __init__(self, L: LinOp, y: Sequence[Number], index: int):
        if index not in (1, 2, 3):
            raise ValueError("query index must be 1, 2 or 3")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "y", tuple(y))
        object.__setattr__(self, "index", index)

    def __setattr__(self, name, value):
        raise AttributeError("FarkasQuery is immutable")

    def __repr__(self) -> str:
        return f"FarkasQuery(index={self.index}, y={self.y!r})"


def feasible_points(P, tol: Number = 0) -> tuple:
    """The feasible sample A = {x in C : G(x) in -S}, as a sorted tuple."""
    S = P.S
    out = []
    for x in P.C:
        gx = P.G.value(x)
        if gx is None:
            continue
        neg = tuple(-c for c in gx)
        if classify_point(S, neg, tol) is not PointClass.OUTSIDE:
            out.append(tuple(x))
    return tuple(sorted(out))


def alpha_holds(P, L: LinOp, y: Sequence[Number], tol: Number = 0) -> bool:
    """Exhaustively decide (alpha): no feasible x has F(x) - L(x) + y
    strictly inside -K.  Off-sample points of F are +inf and never violate.
    """
    y = tuple(y)
    K = P.K
    if L.rows != K.dim or L.cols != P.F.in_dim or len(y) != K.dim:
        raise DimensionError("alpha_holds: dimensions disagree")
    active = [x for x in feasible_points(P, tol) if P.F.value(x) is not None]
    if not active:
        raise EmptyFeasibleSet("no feasible sample point lies in dom F")
    for x in active:
        fx = P.F.value(x)
        d = vec_sub(vec_sub(L.apply(x), fx), y)
        if classify_point(K, d, tol) is PointClass.INTERIOR:
            return False
    return True


def verify_certificate(P, q: FarkasQuery, c: Certificate, tol: Number = 0) -> bool:
    """Recompute the certificate's value set from the instance data and check
    both clauses: the set is FINITE and y is not strictly below it.

    The positivity of T is re-established against the instance's cones, so a
    forged operator raises at reconstruction.
    """
    if c.index != q.index:
        raise ValueError(
            f"certificate index {c.index} does not match query index {q.index}"
        )
    T = PosOp(c.T.op, P.S, P.K, tol)  # re-validates positivity
    W = beta_value_set(c.index, P, q.L, T, Lp=c.Lp, Lpp=c.Lpp, tol=tol)
    if W.tag is not Tag.FINITE:
        return False
    return W.classify(q.y, tol) is not RegionLabel.LOWER


def convert_certificate(
    P, L: LinOp, c: Certificate, target: int, tol: Number = 0
) -> Certificate:
    """Convert a certificate toward a smaller index (3 -> 2 -> 1): the split
    operators are merged back into the composite blocks.  The converted
    certificate qualifies every point the original did, because merging
    splits tightens the value set.
    """
    if target not in (1, 2, 3):
        raise ValueError("target index must be 1, 2 or 3")
    if target > c.index:
        raise ValueError("certificates only convert toward smaller indices")
    if target == c.index:
        return c
    if c.index == 3:
        merged = Certificate(
            2,
            c.T,
            Lp=c.Lp,
            value_set=beta_value_set(2, P, L, c.T, Lp=c.Lp, tol=tol),
        )
        return convert_certificate(P, L, merged, target, tol)
    # index 2 -> 1
    return Certificate(
        1, c.T, value_set=beta_value_set(1, P, L, c.T, tol=tol)
    )


def _query_reproducer(P, q: FarkasQuery, c: Certificate) -> dict:
    rep = {
        "index": q.index,
        "L": encode_mat(q.L.entries),
        "y": encode_vec(q.y),
        "T": encode_mat(c.T.op.entries),
    }
    if c.Lp is not None:
        rep["Lp"] = encode_mat(c.Lp.entries)
    if c.Lpp is not None:
        rep["Lpp"] = encode_mat(c.Lpp.entries)
    return rep


def farkas_equivalence_report(
    P,
    i: int,
    queries: Sequence[FarkasQuery],
    cfg: SearchConfig,
    tol: Number = 0,
) -> dict:
    """Evaluate (alpha) and search a condition-i certificate for every query;
    classify each row four ways.  The combination "alpha false but a
    certificate verified" contradicts weak duality and raises HardFailure
    with a reproducer (it can only mean a bug here, not in the data).
    """
    if not queries:
        raise ValueError("farkas_equivalence_report: no queries")
    rows: List[dict] = []
    counts = {"both_true": 0, "both_false": 0, "alpha_unmatched": 0}
    for q in queries:
        if q.index != i:
            raise ValueError(
                f"query index {q.index} does not match report index {i}"
            )
        alpha = alpha_holds(P, q.L, q.y, tol)
        cert = script_A_membership(i, P, q.L, q.y, cfg, tol)
        found = cert is not None
        if found and not verify_certificate(P, q, cert, tol):
            raise HardFailure(
                "certificate from search failed re-verification",
                _query_reproducer(P, q, cert),
            )
        if found and not alpha:
            raise HardFailure(
                "certificate verified while (alpha) is false",
                _query_reproducer(P, q, cert),
            )
        if alpha and found:
            outcome = "both_true"
        elif not alpha and not found:
            outcome = "both_false"
        else:
            outcome = "alpha_unmatched"  # alpha true, budget found nothing
        counts[outcome] += 1
        row = {
            "query": {"index": q.index, "L": encode_mat(q.L.entries), "y": encode_vec(q.y)},
            "alpha": alpha,
            "beta_status": "CERTIFIED" if found else "NOT_FOUND",
            "outcome": outcome,
        }
        if found:
            row["certificate"] = _query_reproducer(P, q, cert)
        rows.append(row)
    return {"format": 1, "index": i, "rows": rows, "summary": counts}
