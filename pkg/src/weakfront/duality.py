"""Sampled vector optimization problems and their dual values.

A :class:`ProblemInstance` is the sampled data of

    minimize (weakly)  F(x)   subject to  x in C,  G(x) in -S

under the cone order of K.  The three dual problems attach, to each
certificate (a positive operator T, optionally with splitting operators),
a lower frontier of guaranteed values; the dual value of a search budget is
the weak supremum of the union of those frontiers.  That supremum is
computed exactly: each certificate contributes an upward region (its
generators plus the cone) and the union's supremum is the boundary of the
intersection of those regions, which for simplicial cones in dimension one
or two is again a finite staircase obtained by componentwise joins in ray
coordinates.  Every generator of the result therefore carries a concrete
certificate that re-verifies.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .cones import Cone, DimensionError, LinOp, PointClass, classify_point
from .numeric import Number, Vec, encode_mat, encode_vec, vec_neg, vec_sub
from .order_sets import (
    FiniteVecSet,
    GenSet,
    Orient,
    RegionLabel,
    Tag,
    set_preceq,
    winf_finite,
)
from .staircase2d import RayBasis
from .conjugate import Certificate, SampledMap, SearchConfig, beta_value_set
from .farkas import (
    EmptyFeasibleSet,
    HardFailure,
    alpha_holds,
    feasible_points,
)

_DUAL_NAMES = ("VD1", "VD2", "VD3")


class ProblemInstance:
    """Sampled problem data: maps F (objective) and G (constraint) on a
    shared domain sample, the constraint index set C, and the two cones.

    ``flags`` records structural facts that finite samples cannot express
    (linearity of the underlying data, convexity of the underlying C, an
    interior-feasible Slater point); they gate how dual gaps are reported.
    """

    __slots__ = ("F", "G", "C", "K", "S", "hints_T", "hints_L", "flags")

    def __init__(
        self,
        F: SampledMap,
        G: SampledMap,
        C: Sequence[Sequence[Number]],
        K: Cone,
        S: Cone,
        hints_T: Sequence[LinOp] = (),
        hints_L: Sequence[LinOp] = (),
        flags: Optional[dict] = None,
    ):
        if F.in_dim != G.in_dim:
            raise DimensionError("F and G have different domain dimensions")
        if F.out_dim != K.dim:
            raise DimensionError("F values and K live in different dimensions")
        if G.out_dim != S.dim:
            raise DimensionError("G values and S live in different dimensions")
        C_pts = tuple(sorted({tuple(x) for x in C}))
        if not C_pts:
            raise ValueError("empty constraint index set C")
        for x in C_pts:
            if len(x) != F.in_dim:
                raise DimensionError("C point dimension disagrees with domain")
            if G.value(x) is None:
                raise ValueError(f"C point {x!r} is outside dom G")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "C", C_pts)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "hints_T", tuple(hints_T))
        object.__setattr__(self, "hints_L", tuple(hints_L))
        object.__setattr__(self, "flags", dict(flags or {}))
        active = [
            x for x in feasible_points(self) if F.value(x) is not None
        ]
        if not active:
            raise EmptyFeasibleSet(
                "instance violates the standing assumption: no feasible "
                "sample point lies in dom F"
            )

    def __setattr__(self, name, value):
        raise AttributeError("ProblemInstance is immutable")

    @property
    def n(self) -> int:
        return self.F.in_dim

    @property
    def m(self) -> int:
        return self.F.out_dim

    @property
    def p(self) -> int:
        return self.G.out_dim

    def search_config(
        self,
        t_box: Number = 1,
        t_step: Number = 1,
        l_box: Number = 0,
        l_step: Number = 1,
    ) -> SearchConfig:
        """A SearchConfig with this instance's hints merged in."""
        return SearchConfig(
            t_box=t_box,
            t_step=t_step,
            l_box=l_box,
            l_step=l_step,
            hints_T=self.hints_T,
            hints_L=self.hints_L,
        )

    def slater_holds(self) -> Optional[bool]:
        """Exact check of the interior-feasibility flag: the declared point
        x1 must have G(x1) strictly inside -S.  None when no point is
        declared."""
        x1 = self.flags.get("slater_point")
        if x1 is None:
            return None
        gx = self.G.value(tuple(x1))
        if gx is None:
            return False
        return classify_point(self.S, vec_neg(gx)) is PointClass.INTERIOR

    def theorem_flags(self) -> bool:
        """True when the declared structure matches the strong-duality
        hypotheses: linear data, convex C, and a verified Slater point."""
        return bool(
            self.flags.get("is_linear_F")
            and self.flags.get("is_linear_G")
            and self.flags.get("is_convex_C")
            and self.slater_holds()
        )

    def __repr__(self) -> str:
        return (
            f"ProblemInstance(n={self.n}, m={self.m}, p={self.p}, "
            f"|C|={len(self.C)})"
        )


def feasible_set(P: ProblemInstance, tol: Number = 0) -> FiniteVecSet:
    """The feasible sample A = {x in C : G(x) in -S} as a point set."""
    pts = feasible_points(P, tol)
    if not pts:
        raise EmptyFeasibleSet("no feasible sample point")
    return FiniteVecSet(pts)


def winf_vp(P: ProblemInstance, L: LinOp, tol: Number = 0) -> GenSet:
    """The primal value frontier winf{F(x) - L(x) : x feasible}."""
    if L.rows != P.m or L.cols != P.n:
        raise DimensionError("winf_vp: perturbation shape disagrees")
    image = [
        vec_sub(P.F.value(x), L.apply(x))
        for x in feasible_points(P, tol)
        if P.F.value(x) is not None
    ]
    if not image:
        raise EmptyFeasibleSet("no feasible sample point lies in dom F")
    return winf_finite(FiniteVecSet(image), P.K, tol)


class DualValue:
    """The dual value of one problem/budget: the exact weak supremum of all
    certificate value frontiers, with one re-verifiable certificate stored
    per attained generator."""

    __slots__ = ("which", "perturbation", "attained", "frontier", "certificates")

    def __init__(
        self,
        which: str,
        perturbation: LinOp,
        attained: FiniteVecSet,
        frontier: GenSet,
        certificates: Tuple[Tuple[Vec, Certificate], ...],
    ):
        object.__setattr__(self, "which", which)
        object.__setattr__(self, "perturbation", perturbation)
        object.__setattr__(self, "attained", attained)
        object.__setattr__(self, "frontier", frontier)
        object.__setattr__(self, "certificates", certificates)

    def __setattr__(self, name, value):
        raise AttributeError("DualValue is immutable")

    def certificate_for(self, point: Sequence[Number]) -> Certificate:
        key = tuple(point)
        for p, c in self.certificates:
            if p == key:
                return c
        raise KeyError(f"{key!r} is not an attained dual value")

    def __repr__(self) -> str:
        return (
            f"DualValue({self.which}, attained={list(self.attained.points)!r})"
        )


def _enumerate_certificates(index: int, P: ProblemInstance, L: LinOp, cfg, tol):
    """All budget certificates for one dual problem, deterministic order."""
    if index == 1:
        for T in cfg.posop_budget(P.S, P.K):
            W = beta_value_set(1, P, L, T, tol=tol)
            yield Certificate(1, T, value_set=W)
    elif index == 2:
        for Lp in cfg.linop_budget(P.m, P.n):
            for T in cfg.posop_budget(P.S, P.K):
                W = beta_value_set(2, P, L, T, Lp=Lp, tol=tol)
                yield Certificate(2, T, Lp=Lp, value_set=W)
    else:
        for Lp in cfg.linop_budget(P.m, P.n):
            for Lpp in cfg.linop_budget(P.m, P.n):
                for T in cfg.posop_budget(P.S, P.K):
                    W = beta_value_set(3, P, L, T, Lp=Lp, Lpp=Lpp, tol=tol)
                    yield Certificate(3, T, Lp=Lp, Lpp=Lpp, value_set=W)


def dual_value(
    P: ProblemInstance,
    which: str,
    L: LinOp,
    cfg: SearchConfig,
    tol: Number = 0,
) -> DualValue:
    """Evaluate one dual problem over a certificate budget, exactly.

    Each certificate guarantees every value on (and weakly below) the
    frontier of its negated value set; the budget's dual value is the weak
    supremum of the union of those frontiers, i.e. the boundary of the
    intersection of the upward regions, merged generator-by-generator via
    componentwise joins in ray coordinates.  Each generator of the result
    lies on some contributing certificate's frontier and is stored with it.
    """
    if which not in _DUAL_NAMES:
        raise ValueError(f"unknown dual problem {which!r}")
    if L.rows != P.m or L.cols != P.n:
        raise DimensionError("dual_value: perturbation shape disagrees")
    basis = RayBasis.for_cone(P.K)
    if basis is None:
        raise ValueError(
            "exact dual merge needs a simplicial pointed cone of dimension "
            "1 or 2 with exact data"
        )
    index = int(which[-1])
    pieces: List[Tuple[Certificate, GenSet]] = []
    current: Optional[tuple] = None
    for cert in _enumerate_certificates(index, P, L, cfg, tol):
        piece = cert.value_set.negate()  # INF frontier of guaranteed values
        pieces.append((cert, piece))
        gens = piece.generators.points
        if current is None:
            current = gens
        else:
            joined = FiniteVecSet(
                basis.join(u, v) for u in current for v in gens
            )
            current = winf_finite(joined, P.K, tol).generators.points
    if current is None:
        raise ValueError("empty certificate budget")
    attained = FiniteVecSet(current)
    frontier = GenSet(Tag.FINITE, Orient.INF, attained, P.K)
    stored = []
    for h in attained.points:
        owner = next(
            (
                c
                for c, piece in pieces
                if piece.classify(h, tol) is RegionLabel.FRONTIER
            ),
            None,
        )
        if owner is None:  # cannot happen: h is on the region boundary
            raise RuntimeError(f"no certificate owns attained point {h!r}")
        stored.append((h, owner))
    return DualValue(which, L, attained, frontier, tuple(stored))


def weak_duality_check(
    P: ProblemInstance, L: LinOp, cfg: SearchConfig, tol: Number = 0
) -> Tuple[bool, bool, bool]:
    """The three weak-duality relations, in order:

    wsup(VD3) precedes wsup(VD2);  wsup(VD2) precedes wsup(VD1);
    wsup(VD1) precedes winf(VP).

    All three hold for every budget built from shared operator grids.
    """
    d1 = dual_value(P, "VD1", L, cfg, tol)
    d2 = dual_value(P, "VD2", L, cfg, tol)
    d3 = dual_value(P, "VD3", L, cfg, tol)
    vp = winf_vp(P, L, tol)
    return (
        set_preceq(d3.frontier, d2.frontier, tol),
        set_preceq(d2.frontier, d1.frontier, tol),
        set_preceq(d1.frontier, vp, tol),
    )


class StrongDualityResult:
    """Outcome of a strong-duality check: HOLDS, GAP (with a primal frontier
    generator no budget certificate attains), or INCONCLUSIVE (convex-flagged
    instance, bare budget)."""

    __slots__ = ("status", "which", "primal", "dual", "witness", "record")

    def __init__(self, status, which, primal, dual, witness=None, record=None):
        object.__setattr__(self, "status", status)
        object.__setattr__(self, "which", which)
        object.__setattr__(self, "primal", primal)
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "record", record)

    def __setattr__(self, name, value):
        raise AttributeError("StrongDualityResult is immutable")

    def __repr__(self) -> str:
        if self.witness is None:
            return f"StrongDualityResult({self.status}, {self.which})"
        return (
            f"StrongDualityResult({self.status}, {self.which}, "
            f"witness={self.witness!r})"
        )


def strong_duality_check(
    P: ProblemInstance,
    L: LinOp,
    cfg: SearchConfig,
    which: str = "VD1",
    tol: Number = 0,
) -> StrongDualityResult:
    """Compare winf(VP_L) with the budget dual value, exactly.

    HOLDS when the two canonical frontiers coincide — then every primal
    frontier generator is an attained, certificate-carrying dual value.
    Otherwise some primal generator is unattained: GAP reports the first
    such witness together with its (alpha)/certificate record, downgraded
    to INCONCLUSIVE when the instance is convex-flagged but the budget
    carried no hints (the search, not the theorem, ran out).
    """
    vp = winf_vp(P, L, tol)
    dv = dual_value(P, which, L, cfg, tol)
    if dv.frontier == vp:
        return StrongDualityResult("HOLDS", which, vp, dv)
    witness = next(
        (g for g in vp.generators.points if g not in dv.attained.points),
        vp.generators.points[0],
    )
    y_w = vec_neg(witness)
    record = {
        "witness": encode_vec(witness),
        "alpha": alpha_holds(P, L, y_w, tol),
        "beta_status": "NOT_FOUND",
    }
    convex = bool(
        P.flags.get("is_convex_C")
        and P.flags.get("is_linear_F")
        and P.flags.get("is_linear_G")
    )
    bare = not (cfg.hints_T or cfg.hints_L)
    status = "INCONCLUSIVE" if (convex and bare) else "GAP"
    return StrongDualityResult(status, which, vp, dv, witness, record)


def stable_strong_duality_sweep(
    P: ProblemInstance,
    L_grid: Sequence[LinOp],
    cfg: SearchConfig,
    which: str = "VD1",
    tol: Number = 0,
) -> dict:
    """strong_duality_check across a grid of perturbations L.

    A GAP on an instance whose declared structure satisfies the
    strong-duality hypotheses, searched with hints, is a hard failure: the
    theorem says the certificate exists, so the implementation lost it.
    """
    rows = []
    counts = {"HOLDS": 0, "GAP": 0, "INCONCLUSIVE": 0}
    hinted = bool(cfg.hints_T or cfg.hints_L)
    for L in L_grid:
        res = strong_duality_check(P, L, cfg, which, tol)
        counts[res.status] += 1
        row = {"L": encode_mat(L.entries), "status": res.status}
        if res.witness is not None:
            row["witness"] = encode_vec(res.witness)
            row["record"] = res.record
        rows.append(row)
        if res.status == "GAP" and P.theorem_flags() and hinted:
            raise HardFailure(
                "strong duality gap on a hinted instance satisfying the "
                "strong-duality hypotheses",
                {"L": encode_mat(L.entries), "record": res.record},
            )
    return {
        "format": 1,
        "which": which,
        "rows": rows,
        "summary": counts,
    }
