"""Silting predicates, the partial order, resolution towers and gamma vectors."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .approx import right_approximation
from .complexes import PerfectComplex, cocone, minimize
from .errors import IterationCap, NotInAisle
from .hom import hom_window
from .linalg import int_det
from .workspace import Workspace

VERIFIED = "Verified"
NECESSARY_ONLY = "NecessaryOnly"
FAILED = "Failed"


@dataclass
class Certificate:
    status: str
    reason: str = ""
    trail: list | None = None  # list of (direction, class id) steps from the algebra stalk


@dataclass(frozen=True)
class SiltingObject:
    """Basic object: sorted tuple of registry ids of pairwise non-isomorphic
    indecomposable summands."""

    ids: tuple
    certificate: Certificate = dc_field(compare=False, hash=False, default=None)

    @property
    def delta(self):
        return len(self.ids)

    def label(self, ws: Workspace) -> str:
        return ws.labels(self.ids)

    def with_certificate(self, cert: Certificate) -> "SiltingObject":
        return SiltingObject(self.ids, cert)


def algebra_object(ws: Workspace) -> SiltingObject:
    return SiltingObject(tuple(sorted(ws.projective_ids)), Certificate(VERIFIED, "generator", trail=[]))


def presilting_witness(ws: Workspace, ids):
    """None if Hom(M, M[>0]) = 0; otherwise (shift, src id, tgt id,
    representative nonzero class)."""
    for x in ids:
        for y in ids:
            lo, hi = hom_window(ws.registry.complex(x), ws.registry.complex(y))
            for i in range(1, hi + 1):
                if ws.hom_dim(x, y, i) > 0:
                    rep = ws.hom(x, y, i).basis_maps()[0]
                    return (i, x, y, rep)
    return None


def is_presilting(ws: Workspace, ids):
    return presilting_witness(ws, ids) is None


def k0_matrix(ws: Workspace, ids):
    return [ws.registry.complex(i).euler_class() for i in ids]


def is_unimodular(mat) -> bool:
    if len(mat) == 0:
        return False
    if any(len(r) != len(mat) for r in mat):
        return False
    return abs(int_det(mat)) == 1


def silting_certificate(ws: Workspace, ids, trail=None) -> Certificate:
    """Verified needs presilting + delta = n + unimodular K0 + a mutation trail;
    without a trail the first three yield NecessaryOnly (thickness unproved)."""
    ids = tuple(sorted(ids))
    w = presilting_witness(ws, ids)
    if w is not None:
        return Certificate(FAILED, f"Hom(M, M[{w[0]}]) != 0 between summands {w[1]},{w[2]}")
    if len(ids) != ws.alg.n_simples:
        return Certificate(FAILED, f"delta = {len(ids)} != {ws.alg.n_simples} simples")
    if not is_unimodular(k0_matrix(ws, ids)):
        return Certificate(FAILED, "K0 classes of summands are not unimodular")
    if trail is not None:
        return Certificate(VERIFIED, "presilting + K0 basis + mutation trail", trail=list(trail))
    return Certificate(NECESSARY_ONLY, "presilting + K0 basis; no generation trail")


def make_object(ws: Workspace, ids, trail=None) -> SiltingObject:
    ids = tuple(sorted(ids))
    if trail is None and ids == tuple(sorted(ws.projective_ids)):
        trail = []
    return SiltingObject(ids, silting_certificate(ws, ids, trail))


def is_tilting(ws: Workspace, obj: SiltingObject) -> bool:
    """Vanishing in all nonzero shifts of the window."""
    for x in obj.ids:
        for y in obj.ids:
            lo, hi = hom_window(ws.registry.complex(x), ws.registry.complex(y))
            for i in range(lo, hi + 1):
                if i != 0 and ws.hom_dim(x, y, i) > 0:
                    return False
    return True


def _leq_vanishing(ws: Workspace, a_ids, b_ids) -> bool:
    """Hom(A, B[>0]) = 0 (meaning A >= B in the silting order)."""
    for x in a_ids:
        for y in b_ids:
            lo, hi = hom_window(ws.registry.complex(x), ws.registry.complex(y))
            for i in range(1, hi + 1):
                if ws.hom_dim(x, y, i) > 0:
                    return False
    return True


def compare(ws: Workspace, a: SiltingObject, b: SiltingObject) -> str:
    """'greater', 'less', 'equal' or 'incomparable' for the order M >= N.

    Defined for certified (Verified or NecessaryOnly) objects; results on
    NecessaryOnly inputs are provisional."""
    from .errors import ValidationFailed

    for obj in (a, b):
        if obj.certificate is not None and obj.certificate.status == FAILED:
            raise ValidationFailed("compare needs silting-certified objects: " + obj.certificate.reason)
    ge = _leq_vanishing(ws, a.ids, b.ids)
    le = _leq_vanishing(ws, b.ids, a.ids)
    if ge and le:
        if set(a.ids) != set(b.ids):
            # antisymmetry can only degenerate when thick generation was unproved
            raise ValidationFailed("order degenerate: distinct objects compare equal in both directions")
        return "equal"
    if ge:
        return "greater"
    if le:
        return "less"
    return "incomparable"


@dataclass
class TowerStage:
    remainder: PerfectComplex  # N_i
    approx_ids: list  # multiset of ids of M_i
    approx_map: object  # ChainMap M_i -> N_i


@dataclass
class ResolutionTower:
    stages: list  # list of TowerStage; remainder of stage 0 is N itself
    final_ids: list  # decomposition of the last remainder inside add M


def resolution_tower(ws: Workspace, m_ids, N: PerfectComplex, cap: int = 64) -> ResolutionTower:
    """Triangles N_{i+1} -> M_i -> N_i with minimal right add(M)-approximations,
    until the remainder lies in add M."""
    m_ids = tuple(sorted(set(m_ids)))
    # precondition: N in the aisle of M
    for x in m_ids:
        lo, hi = hom_window(ws.registry.complex(x), N)
        for i in range(1, hi + 1):
            from .hom import hom_space

            if hom_space(ws.registry.complex(x), N, i).dim > 0:
                raise NotInAisle(f"Hom(M, N[{i}]) != 0")
    stages = []
    current, _, _ = minimize(N)
    for _step in range(cap):
        dec = ws.registry.register_decomposition(current)
        if all(i in m_ids for i in dec):
            return ResolutionTower(stages, dec)
        approx = right_approximation(ws, current, m_ids, minimize=True)
        next_rem, _ = cocone(approx.map)
        next_min, _, _ = minimize(next_rem)
        stages.append(TowerStage(current, list(approx.summand_ids), approx.map))
        current = next_min
    raise IterationCap("resolution tower exceeded the iteration cap")


def gamma(ws: Workspace, m_ids, X: PerfectComplex):
    """Coordinates of X in the basis ind(M), via towers and shift-normalization."""
    m_ids = tuple(sorted(set(m_ids)))
    Xm, _, _ = minimize(X)
    if Xm.is_zero():
        return tuple(0 for _ in m_ids)
    # smallest k >= 0 with Hom(M, X[k][>0]) = 0: all Hom(M, X[j]) vanish for j > k
    top = 0
    for x in m_ids:
        lo, hi = hom_window(ws.registry.complex(x), Xm)
        for j in range(max(1, lo), hi + 1):
            from .hom import hom_space

            if j > top and hom_space(ws.registry.complex(x), Xm, j).dim > 0:
                top = j
    k = top
    tower = resolution_tower(ws, m_ids, Xm.shift(k))
    coords = {i: 0 for i in m_ids}
    for step, stage in enumerate(tower.stages):
        sign = 1 if step % 2 == 0 else -1
        for i in stage.approx_ids:
            coords[i] += sign
    sign = 1 if len(tower.stages) % 2 == 0 else -1
    for i in tower.final_ids:
        coords[i] += sign
    ksign = 1 if k % 2 == 0 else -1
    return tuple(ksign * coords[i] for i in m_ids)


def gamma_matrix(ws: Workspace, base_ids, obj: SiltingObject):
    return [gamma(ws, base_ids, ws.registry.complex(i)) for i in obj.ids]
