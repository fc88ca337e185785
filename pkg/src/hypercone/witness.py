"""Constructive witnesses of non-hyperbolicity and boundary structure.

Searches run over primitive cyclic word classes in shortlex order, so the
returned witnesses are canonical and reproducible.  Every witness is
re-verified from scratch before being reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .projgeom import angle_dist
from .sl2core import Mat2, eigen_data
from .symdyn import Sft, Word, periodic_words, product, render_word
from .tolerances import DEFAULT, Tolerances


@dataclass(frozen=True)
class ParabolicHit:
    word: Word
    kind: str       # "parabolic" or "identity"
    trace: float


@dataclass(frozen=True)
class HeteroclinicHit:
    source: Word     # periodic word whose unstable direction is carried
    connector: Word  # admissible glue (may be empty)
    target: Word     # periodic word whose stable direction is hit
    residual: float


@dataclass(frozen=True)
class BoundaryReport:
    kind: str        # elliptic | parabolic | identity | heteroclinic | none
    elliptic: Word | None = None
    parabolic: ParabolicHit | None = None
    heteroclinic: HeteroclinicHit | None = None
    budgets: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "budgets": dict(self.budgets)}
        if self.elliptic is not None:
            out["elliptic_word"] = render_word(self.elliptic)
        if self.parabolic is not None:
            out["parabolic_word"] = render_word(self.parabolic.word)
            out["parabolic_kind"] = self.parabolic.kind
            out["trace"] = self.parabolic.trace
        if self.heteroclinic is not None:
            h = self.heteroclinic
            out["heteroclinic"] = {"source": render_word(h.source),
                                   "connector": render_word(h.connector),
                                   "target": render_word(h.target),
                                   "residual": h.residual}
        return out


def search_elliptic(mats, sft: Sft, max_len: int,
                    tol: Tolerances = DEFAULT) -> Word | None:
    """First cyclic class (shortlex) whose product trace lies inside (-2, 2)."""
    for w in periodic_words(sft, max_len):
        p = product(mats, w, sft)
        if abs(float(p.trace())) < 2.0 - tol.trace:
            assert abs(float(product(mats, w).trace())) < 2.0  # re-verify
            return w
    return None


def search_parabolic(mats, sft: Sft, max_len: int,
                     tol: Tolerances = DEFAULT) -> ParabolicHit | None:
    """First cyclic class with ||tr| - 2| <= tol, distinguishing +-identity."""
    for w in periodic_words(sft, max_len):
        p = product(mats, w, sft)
        if p.dist_to_pm_identity() <= tol.identity:
            return ParabolicHit(word=w, kind="identity", trace=float(p.trace()))
        if abs(abs(float(p.trace())) - 2.0) <= tol.parabolic:
            return ParabolicHit(word=w, kind="parabolic", trace=float(p.trace()))
    return None


def _hyperbolic_periodic(mats, sft: Sft, max_len: int, tol: Tolerances):
    out = []
    for w in periodic_words(sft, max_len):
        p = product(mats, w, sft)
        if abs(float(p.trace())) > 2.0 + tol.trace:
            out.append((w, p))
    return out


def _connectors(sft: Sft, n_max: int):
    yield ()
    stack = [(s,) for s in range(sft.n_symbols - 1, -1, -1)]
    while stack:
        c = stack.pop()
        yield c
        if len(c) < n_max:
            for s in range(sft.n_symbols - 1, -1, -1):
                if sft.ok(c[-1], s):
                    stack.append(c + (s,))


def best_heteroclinic(mats, sft: Sft, k_max: int, ell_max: int, n_max: int,
                      tol: Tolerances = DEFAULT) -> HeteroclinicHit | None:
    """Minimal-residual admissible connection, regardless of tolerance.

    Admissibility glue: the last letter of the source feeds the connector
    (or the target directly when the connector is empty) and the connector
    feeds the first letter of the target; source and target must not lie on
    the same cyclic orbit.  Targets are pre-sorted by stable angle so each
    carried direction costs a bisection plus a short outward scan instead of
    a pass over all targets.
    """
    import bisect

    best: HeteroclinicHit | None = None
    sources = _hyperbolic_periodic(mats, sft, k_max, tol)
    targets = _hyperbolic_periodic(mats, sft, ell_max, tol)
    target_dirs = []
    for w, p in targets:
        _, (s, _) = eigen_data(p)
        target_dirs.append((s.angle, w))
    target_dirs.sort()
    angles = [a for a, _ in target_dirs]
    m_t = len(target_dirs)

    def scan(carried, v, left):
        nonlocal best
        if m_t == 0:
            return
        start = bisect.bisect_left(angles, carried) % m_t
        for off in range(m_t):
            for idx in {(start + off) % m_t, (start - 1 - off) % m_t}:
                s_angle, w = target_dirs[idx]
                r = angle_dist(carried, s_angle)
                if v == w or not sft.ok(left, w[0]):
                    continue
                if best is None or r < best.residual:
                    best = HeteroclinicHit(source=v, connector=conn,
                                           target=w, residual=r)
            gap = min(angle_dist(carried, angles[(start + off) % m_t]),
                      angle_dist(carried, angles[(start - 1 - off) % m_t]))
            if best is not None and gap > best.residual and off >= sft.n_symbols:
                break

    for conn in _connectors(sft, n_max):
        P = product(mats, conn, sft) if conn else Mat2.identity()
        for (v, pv) in sources:
            if conn and not sft.ok(v[-1], conn[0]):
                continue
            (u, _), _ = eigen_data(pv)
            carried = P.act_angle(u.angle)
            left = conn[-1] if conn else v[-1]
            scan(carried, v, left)
    return best


def search_heteroclinic(mats, sft: Sft, k_max: int, ell_max: int, n_max: int,
                        tol: Tolerances = DEFAULT) -> HeteroclinicHit | None:
    """Best connection when its residual meets the tolerance, else None."""
    best = best_heteroclinic(mats, sft, k_max, ell_max, n_max, tol)
    if best is not None and best.residual <= tol.heteroclinic:
        return best
    return None


def diagnose_boundary(mats, sft: Sft, budget: tuple[int, int, int] = (12, 12, 8),
                      tol: Tolerances = DEFAULT) -> BoundaryReport:
    """Run the three witness searches under a shared budget.

    Near a non-principal component no product may come close to +-identity,
    so an identity hit is reported as its own kind.
    """
    k_max, ell_max, n_max = budget
    budgets = {"k": k_max, "l": ell_max, "n": n_max}
    w = search_elliptic(mats, sft, max(k_max, ell_max), tol)
    if w is not None:
        return BoundaryReport(kind="elliptic", elliptic=w, budgets=budgets)
    hit = search_parabolic(mats, sft, max(k_max, ell_max), tol)
    if hit is not None:
        kind = "identity" if hit.kind == "identity" else "parabolic"
        return BoundaryReport(kind=kind, parabolic=hit, budgets=budgets)
    het = best_heteroclinic(mats, sft, k_max, ell_max, n_max, tol)
    if het is not None and het.residual <= tol.heteroclinic:
        return BoundaryReport(kind="heteroclinic", heteroclinic=het,
                              budgets=budgets)
    return BoundaryReport(kind="none", heteroclinic=het, budgets=budgets)
