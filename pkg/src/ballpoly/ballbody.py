"""Bodies cut out by congruent balls on S^d.

The body of a generator set X with radius r is the intersection of the
closed balls B[x, r] over the generators x. This module provides the
dimension-generic operations: the minimax (Chebyshev) center of a point
set, inradius via the center identity, regular simplex generator sets,
Monte Carlo volume, the dimension-dependent volume lower-bound constant,
outer approximations of the second dual (the hull obtained by dualizing
twice), and a stochastic upper estimator for the minimal lune width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .sphere import (
    ALG_TOL,
    GeneratorSet,
    Lune,
    as_unit_rows,
    diameter,
    geo_tol,
    geodesic_point,
    jung_circumradius,
    membership_mask,
    pairwise_distances,
    sample_cap,
    spherical_distance,
    tangent_basis,
    tangent_toward,
    _uniform_rows,
)

__all__ = [
    "MinimaxResult",
    "SimplexBody",
    "VolumeEstimate",
    "WidthEstimate",
    "boundary_sample_dual",
    "cap_volume",
    "circumradius_minimax",
    "hull_diameter",
    "inradius_nd",
    "jung_circumradius",
    "mc_volume",
    "minimax_center",
    "pole_margin_certificate",
    "r_hull",
    "schramm_bound",
    "simplex_body",
    "sphere_volume",
    "support_margin_nd",
    "width_nd",
]


# ---------------------------------------------------------------------------
# Minimax (Chebyshev) center


@dataclass(frozen=True)
class MinimaxResult:
    """Solution of min over centers of the largest distance to a point set."""

    center: np.ndarray
    radius: float
    active: tuple[int, ...]
    weights: np.ndarray
    iterations: int


def _max_dist(points: np.ndarray, c: np.ndarray) -> tuple[float, int]:
    dots = np.clip(points @ c, -1.0, 1.0)
    i = int(np.argmin(dots))
    return float(np.arccos(dots[i])), i


def _equalizing_center(points: np.ndarray, idx: list[int]) -> tuple[np.ndarray | None, list[int], np.ndarray | None]:
    """Center equidistant from points[idx] as a nonnegative combination.

    Solves G lam = 1 on the trial set, dropping negative weights until the
    combination is admissible. Returns (center, surviving indices, weights).
    """
    sub = list(idx)
    lam = None
    while sub:
        g = points[sub] @ points[sub].T
        lam, *_ = np.linalg.lstsq(g, np.ones(len(sub)), rcond=None)
        neg = [k for k, val in enumerate(lam) if val < -1e-12]
        if not neg or len(sub) <= 1:
            break
        worst = min(neg, key=lambda k: lam[k])
        sub.pop(worst)
    if lam is None or not sub:
        return None, sub, None
    m = lam @ points[sub]
    nm = float(np.linalg.norm(m))
    if nm < 1e-14:
        return None, sub, None
    return m / nm, sub, lam


_MINIMAX_CACHE: dict[bytes, MinimaxResult] = {}
_MINIMAX_CACHE_LIMIT = 128


def minimax_center(points, restarts: int = 5, iters_per_restart: int = 240) -> MinimaxResult:
    """Geodesic minimax center of a finite point set on a sphere.

    Subgradient descent toward the current farthest point with a 1/k step
    schedule and restarts, followed by an active-set equalization polish
    that lands on the first-order condition: the optimal center is a
    nonnegative combination of the farthest points, all at equal distance.
    Raises ValueError when the points do not fit in an open hemisphere.
    Results are cached by the byte content of the input (the same instance
    is queried by several downstream computations).
    """
    p = as_unit_rows(points)
    key = p.tobytes() + bytes([restarts])
    cached = _MINIMAX_CACHE.get(key)
    if cached is not None:
        return cached
    result = _minimax_center_impl(p, restarts, iters_per_restart)
    if len(_MINIMAX_CACHE) >= _MINIMAX_CACHE_LIMIT:
        _MINIMAX_CACHE.pop(next(iter(_MINIMAX_CACHE)))
    _MINIMAX_CACHE[key] = result
    return result


def _minimax_center_impl(p: np.ndarray, restarts: int, iters_per_restart: int) -> MinimaxResult:
    n = p.shape[0]
    if n == 1:
        return MinimaxResult(p[0].copy(), 0.0, (0,), np.array([1.0]), 0)

    m = p.sum(axis=0)
    nm = float(np.linalg.norm(m))
    if nm < 1e-9:
        raise ValueError("points are not contained in an open hemisphere")
    c = m / nm
    best_f, _ = _max_dist(p, c)
    best_c = c.copy()
    iters = 0

    for _restart in range(restarts):
        c = best_c.copy()
        step0 = max(best_f, 1e-3)
        for k in range(1, iters_per_restart + 1):
            iters += 1
            dots = np.clip(p @ c, -1.0, 1.0)
            i = int(np.argmin(dots))
            fc = float(np.arccos(dots[i]))
            if fc < best_f:
                best_f, best_c = fc, c.copy()
            w = p[i] - dots[i] * c
            wn = float(np.linalg.norm(w))
            if wn < 1e-15:
                break
            c = geodesic_point(c, w / wn, step0 / k)
            c /= np.linalg.norm(c)

    # NLP refinement: maximize the worst inner product m over unit centers.
    # The constraints are linear in (c, m) apart from the unit-norm equality,
    # which SLSQP handles quadratically; the subgradient answer is the start.
    k = p.shape[1]
    con_jac = np.hstack([p, -np.ones((n, 1))])
    cons = (
        {"type": "ineq", "fun": lambda z: p @ z[:k] - z[k],
         "jac": lambda z: con_jac},
        {"type": "eq", "fun": lambda z: z[:k] @ z[:k] - 1.0,
         "jac": lambda z: np.concatenate([2.0 * z[:k], [0.0]])},
    )
    obj_jac = np.zeros(k + 1)
    obj_jac[k] = -1.0
    z0 = np.concatenate([best_c, [float(np.min(p @ best_c))]])
    sol = optimize.minimize(lambda z: -z[k], z0, jac=lambda z: obj_jac,
                            method="SLSQP", constraints=cons,
                            options={"maxiter": 200, "ftol": 1e-16})
    cand = np.asarray(sol.x[:k], dtype=float)
    nc = float(np.linalg.norm(cand))
    if nc > 1e-9:
        cand = cand / nc
        f_cand, _ = _max_dist(p, cand)
        if f_cand < best_f:
            best_f, best_c = f_cand, cand

    # Equalization polish. Active sets are re-identified at shrinking gaps;
    # each equalizing solve is Newton-like near the optimum.
    c = best_c.copy()
    for gap in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8, 1e-10, 1e-12):
        for _round in range(40):
            dots = np.clip(p @ c, -1.0, 1.0)
            dists = np.arccos(dots)
            fmax = float(dists.max())
            idx = np.flatnonzero(dists >= fmax - gap)
            if idx.size < 2:
                idx = np.argsort(dists)[-2:]
            cand, _, _ = _equalizing_center(p, list(idx))
            if cand is None:
                break
            f_new, _ = _max_dist(p, cand)
            moved = float(np.linalg.norm(cand - c))
            if f_new <= best_f + 1e-15:
                if f_new < best_f:
                    best_f, best_c = f_new, cand.copy()
                c = cand
                if moved < 1e-15:
                    break
            else:
                break

    if best_f >= math.pi / 2 - 1e-9:
        raise ValueError("points are not contained in an open hemisphere")

    dots = np.clip(p @ best_c, -1.0, 1.0)
    dists = np.arccos(dots)
    idx = np.flatnonzero(dists >= best_f - 1e-8)
    _, active, lam = _equalizing_center(p, list(idx))
    if lam is None:
        active, lam = [int(np.argmax(dists))], np.array([1.0])
    weights = np.clip(np.asarray(lam, dtype=float), 0.0, None)
    total = float(weights.sum())
    if total > 0:
        weights = weights / total
    return MinimaxResult(best_c, best_f, tuple(int(i) for i in active), weights, iters)


def circumradius_minimax(points) -> tuple[float, np.ndarray]:
    """Smallest enclosing-ball radius of a point set and its center."""
    res = minimax_center(points)
    return res.radius, res.center


def inradius_nd(gens: GeneratorSet) -> tuple[float, np.ndarray]:
    """Inradius and incenter of the body of ``gens``.

    A ball B[c, rho] sits inside every B[x, r] iff dist(c, x) <= r - rho,
    so the largest inscribed ball is centered at the minimax center of the
    generators with rho = r - minimax radius.
    """
    res = minimax_center(gens.points)
    rho = gens.radius - res.radius
    if rho < -geo_tol():
        raise ValueError("generator set has no inscribed ball (circumradius exceeds radius)")
    rho = max(rho, 0.0)
    # Spot-check the inscribed ball boundary against the ball constraints.
    if rho > 0:
        rng = np.random.default_rng(1234)
        dirs = _tangent_dirs(res.center, 16, rng)
        pts = math.cos(rho) * res.center[None, :] + math.sin(rho) * dirs
        if not bool(np.all(membership_mask(pts, gens, tol=geo_tol()))):
            raise RuntimeError("inscribed ball spot-check failed; numerical inconsistency")
    return rho, res.center


# ---------------------------------------------------------------------------
# Regular simplex bodies


@dataclass(frozen=True)
class SimplexBody:
    """Generator set of d+1 pairwise equidistant points (edge = radius)."""

    dim: int
    radius: float
    vertices: np.ndarray

    def generator_set(self) -> GeneratorSet:
        return GeneratorSet(dim=self.dim, radius=self.radius, points=self.vertices)


def simplex_body(d: int, r: float) -> SimplexBody:
    """Regular spherical simplex with all edges r, circumcenter at the
    normalized all-ones direction, circumradius jung_circumradius(d, r)."""
    theta = jung_circumradius(d, r)
    k = d + 1
    centroid = np.full(k, 1.0 / k)
    pole = np.full(k, 1.0 / math.sqrt(k))
    w = np.eye(k) - centroid[None, :]
    w /= np.linalg.norm(w, axis=1)[:, None]
    verts = math.cos(theta) * pole[None, :] + math.sin(theta) * w
    verts /= np.linalg.norm(verts, axis=1)[:, None]
    return SimplexBody(dim=d, radius=float(r), vertices=verts)


# ---------------------------------------------------------------------------
# Volumes


def sphere_volume(d: int) -> float:
    """d-dimensional volume of the unit sphere S^d."""
    if d < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {d}")
    return 2.0 * math.pi ** ((d + 1) / 2.0) / math.gamma((d + 1) / 2.0)


def cap_volume(d: int, theta: float) -> float:
    """Volume of a closed cap of angular radius theta on S^d."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"cap radius must lie in [0, pi], got {theta}")
    frac = float(special.betainc(d / 2.0, d / 2.0, (1.0 - math.cos(theta)) / 2.0))
    return sphere_volume(d) * frac


@dataclass(frozen=True)
class VolumeEstimate:
    """Monte Carlo volume with its one-sigma standard error."""

    value: float
    std_error: float
    n_samples: int
    seed: int
    hit_fraction: float
    proposal_volume: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "std_error": self.std_error,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "hit_fraction": self.hit_fraction,
            "proposal_volume": self.proposal_volume,
        }


def mc_volume(gens: GeneratorSet, n: int, seed: int, chunk: int = 1_000_000) -> VolumeEstimate:
    """Monte Carlo volume of the body of ``gens``.

    Proposals are uniform in the cap B[c, r] about the minimax center c,
    which provably contains the body; the estimate is the hit fraction
    scaled by the cap volume.
    """
    if n < 100:
        raise ValueError(f"need at least 100 samples, got {n}")
    res = minimax_center(gens.points)
    c = res.center
    cos_thresh = math.cos(min(gens.radius + ALG_TOL, math.pi))
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < n:
        m = min(chunk, n - done)
        pts = sample_cap(c, gens.radius, m, rng)
        hits += int(np.count_nonzero(np.min(pts @ gens.points.T, axis=1) >= cos_thresh))
        done += m
    p_hat = hits / n
    vol_cap = cap_volume(gens.dim, gens.radius)
    value = p_hat * vol_cap
    se = vol_cap * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / n)
    return VolumeEstimate(value, se, n, seed, p_hat, vol_cap)


def schramm_bound(d: int) -> tuple[float, float]:
    """Volume lower-bound constant for constant-width-pi/2 bodies on S^d.

    Returns (bound, reference) where reference is the exact volume of the
    regular simplex body at radius pi/2, namely vol(S^d) / 2^(d+1), and
    bound = sqrt(8^d / (2 pi (d+1) (d+4)^d)) * reference. Requires d >= 3.
    """
    if d < 3:
        raise ValueError(f"the volume bound applies for sphere dimension >= 3, got {d}")
    reference = sphere_volume(d) / 2.0 ** (d + 1)
    factor = math.sqrt(8.0 ** d / (2.0 * math.pi * (d + 1) * (d + 4.0) ** d))
    return factor * reference, reference


# ---------------------------------------------------------------------------
# Boundary sampling, second dual, width


def _tangent_dirs(c: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    basis = tangent_basis(c)
    return _uniform_rows(rng, n, basis.shape[0]) @ basis


def _push_to_boundary(c: np.ndarray, dirs: np.ndarray, feasible, t_hi: float) -> np.ndarray:
    """Farthest feasible point from c along each tangent direction.

    ``feasible`` maps an (m, k) array to a boolean mask; feasibility along a
    ray from an interior center is monotone for convex bodies, so plain
    bisection applies (vectorized across all rays)."""
    lo = np.zeros(len(dirs))
    hi = np.full(len(dirs), t_hi)
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        pts = np.cos(mid)[:, None] * c[None, :] + np.sin(mid)[:, None] * dirs
        ok = feasible(pts)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return np.cos(lo)[:, None] * c[None, :] + np.sin(lo)[:, None] * dirs


def boundary_sample_dual(gens: GeneratorSet, n: int, seed: int) -> np.ndarray:
    """n points approximately on the boundary of the body of ``gens``.

    Rejection proposals in the proposal cap are pushed outward along rays
    from the minimax center; directions that fail rejection are replaced by
    fresh ray probes (which always succeed since the inradius is positive).
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    res = minimax_center(gens.points)
    c = res.center
    rng = np.random.default_rng(seed)

    def feasible(pts):
        return membership_mask(pts, gens, tol=ALG_TOL)

    cand = sample_cap(c, gens.radius, 2 * n, rng)
    keep = cand[feasible(cand)][:n]
    dirs = []
    for y in keep:
        w = y - float(c @ y) * c
        wn = float(np.linalg.norm(w))
        if wn > 1e-12:
            dirs.append(w / wn)
    if len(dirs) < n:
        extra = _tangent_dirs(c, n - len(dirs), rng)
        dirs = np.vstack([np.stack(dirs), extra]) if dirs else extra
    else:
        dirs = np.stack(dirs)
    t_hi = min(gens.radius, math.pi - 1e-9)
    return _push_to_boundary(c, dirs, feasible, t_hi)


def _refine_farthest_pair(c: np.ndarray, feasible, t_hi: float, samples: np.ndarray) -> np.ndarray:
    """Locally maximize the distance between two boundary points.

    Boundary points are parametrized by unnormalized tangent vectors at c
    (mapped through the ray bisection), and a Nelder-Mead search polishes
    the best sampled pair."""
    basis = tangent_basis(c)
    m = basis.shape[0]

    def bpoint(vec: np.ndarray) -> np.ndarray:
        nv = float(np.linalg.norm(vec))
        w = (vec / nv) @ basis if nv > 1e-12 else basis[0]
        lo, hi = 0.0, t_hi
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            pt = math.cos(mid) * c + math.sin(mid) * w
            if feasible(pt[None, :])[0]:
                lo = mid
            else:
                hi = mid
        return math.cos(lo) * c + math.sin(lo) * w

    gram = samples @ samples.T
    np.fill_diagonal(gram, 1.0)
    i, j = np.unravel_index(int(np.argmin(gram)), gram.shape)

    def comps(y: np.ndarray) -> np.ndarray:
        w = y - float(c @ y) * c
        wn = float(np.linalg.norm(w))
        return (w / wn) @ basis.T if wn > 1e-12 else np.eye(m)[0]

    x0 = np.concatenate([comps(samples[i]), comps(samples[j])])

    def neg_dist(x: np.ndarray) -> float:
        pq = bpoint(x[:m]) @ bpoint(x[m:])
        return -float(np.arccos(np.clip(pq, -1.0, 1.0)))

    res = optimize.minimize(
        neg_dist, x0, method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 500, "maxfev": 700},
    )
    best = res.x if res.fun <= neg_dist(x0) else x0
    return np.stack([bpoint(best[:m]), bpoint(best[m:])])


def _hull_mask_fn(gens: GeneratorSet):
    """Certified membership test for the hull of the generators: the set
    of centers p with the body inside B[p, r], i.e. support margin of p at
    least cos(r). Exact arc margins in dimension 2, the nonnegative-weight
    certificate otherwise, so True is a proof in both cases."""
    cos_r = math.cos(gens.radius)
    if gens.dim == 2:
        from . import diskpoly

        boundary = diskpoly.boundary_structure(gens)

        def mask(pts: np.ndarray) -> np.ndarray:
            return diskpoly.support_margins_2d(gens, pts, boundary) >= cos_r - 1e-9

        return mask

    def mask(pts: np.ndarray) -> np.ndarray:
        return np.array([pole_margin_certificate(gens.points, gens.radius, p) >= cos_r - 1e-9
                         for p in pts])

    return mask


def r_hull(gens: GeneratorSet, n_support: int = 256, seed: int = 0, refine: bool = True) -> np.ndarray:
    """Certified point sample of the hull of the generator set.

    The hull (ball hull) is the intersection of every radius-r ball whose
    center ball contains all generators; equivalently the set of centers p
    with the whole body inside B[p, r]. Points are pushed outward from the
    minimax center against the certified membership test, a locally
    refined farthest pair is appended, and the generators themselves (all
    hull members) are included, so pairwise distances of the result give
    sound lower estimates of the hull diameter.
    """
    if n_support < 8:
        raise ValueError(f"n_support must be >= 8, got {n_support}")
    res = minimax_center(gens.points)
    c = res.center
    hull_mask = _hull_mask_fn(gens)
    if not bool(hull_mask(c[None, :])[0]):
        # the minimax center is always a hull member; certification can
        # only fail by solver shortfall, in which case fall back to the
        # generators alone
        return gens.points.copy()

    rng = np.random.default_rng([seed, 977])
    n_dirs = n_support if gens.dim == 2 else min(n_support, 48)
    dirs = _tangent_dirs(c, n_dirs, rng)
    t_hi = min(gens.radius, math.pi - 1e-9)
    hull_pts = _push_to_boundary(c, dirs, hull_mask, t_hi)
    hull_pts = np.vstack([gens.points, hull_pts])
    if refine and len(hull_pts) >= 2:
        if gens.dim == 2:
            pair = _refine_farthest_pair(c, hull_mask, t_hi, hull_pts)
        else:
            # per-point certificates make the generic refiner expensive;
            # the joint certified solve is cheap and just as sound
            _, pair = hull_diameter(gens, seed=seed)
        hull_pts = np.vstack([hull_pts, pair])
    return hull_pts


def hull_diameter(gens: GeneratorSet, seed: int = 0) -> tuple[float, np.ndarray]:
    """Diameter of the hull of the generator set with a realizing pair.

    Dimension 2 enumerates the exact candidate structure. Higher
    dimensions maximize the pair distance jointly over certified hull
    members: poles carry their nonnegative-weight certificates as extra
    variables, every accepted pair is re-certified exactly, and the
    farthest generator pairs seed the solver (they are hull members with
    exact certificates), so the result is a sound lower estimate that is
    exact on the symmetric reference bodies.
    """
    if gens.dim == 2:
        from . import diskpoly

        return diskpoly.hull_diameter_2d(gens)

    g = gens.points
    n, k = g.shape
    r = gens.radius
    cos_r = math.cos(r)

    best = -1.0
    pair = None
    for i in range(n):
        for j in range(i + 1, n):
            d_ij = spherical_distance(g[i], g[j])
            if d_ij > best:
                best, pair = d_ij, np.stack([g[i], g[j]])
    if pair is None:
        return 0.0, np.stack([g[0], g[0]])

    def unpack(z):
        p, q = z[:k], z[k:2 * k]
        lp, lq = z[2 * k:2 * k + n], z[2 * k + n:]
        return p, q, lp, lq

    def cert_terms(p, lam):
        w = g.T @ lam - p
        s = math.sqrt(float(w @ w) + 1e-24)
        # smoothed norm only understates the bound, so feasibility of the
        # smoothed constraint still implies the exact certificate
        return cos_r * (float(lam.sum()) - 1.0) - s, w, s

    def cons_f(z):
        p, q, lp, lq = unpack(z)
        return np.array([cert_terms(p, lp)[0], cert_terms(q, lq)[0]])

    def cons_jac(z):
        p, q, lp, lq = unpack(z)
        out = np.zeros((2, z.size))
        _, wp, sp = cert_terms(p, lp)
        _, wq, sq = cert_terms(q, lq)
        out[0, :k] = wp / sp
        out[0, 2 * k:2 * k + n] = cos_r - (g @ wp) / sp
        out[1, k:2 * k] = wq / sq
        out[1, 2 * k + n:] = cos_r - (g @ wq) / sq
        return out

    def norm_f(z):
        p, q, _, _ = unpack(z)
        return np.array([p @ p - 1.0, q @ q - 1.0])

    def norm_jac(z):
        p, q, _, _ = unpack(z)
        out = np.zeros((2, z.size))
        out[0, :k] = 2.0 * p
        out[1, k:2 * k] = 2.0 * q
        return out

    def objective(z):
        p, q, _, _ = unpack(z)
        grad = np.zeros(z.size)
        grad[:k] = q
        grad[k:2 * k] = p
        return float(p @ q), grad

    bounds = [(None, None)] * (2 * k) + [(0.0, None)] * (2 * n)
    cons = ({"type": "ineq", "fun": cons_f, "jac": cons_jac},
            {"type": "eq", "fun": norm_f, "jac": norm_jac})

    for i, j in _top_pairs(g, 3):
        z0 = np.concatenate([g[i], g[j], np.eye(n)[i], np.eye(n)[j]])
        res = optimize.minimize(objective, z0, jac=True, method="SLSQP",
                                bounds=bounds, constraints=cons,
                                options={"maxiter": 200, "ftol": 1e-14})
        p, q, _, _ = unpack(np.asarray(res.x, dtype=float))
        np_, nq = float(np.linalg.norm(p)), float(np.linalg.norm(q))
        if np_ < 1e-9 or nq < 1e-9:
            continue
        p, q = p / np_, q / nq
        if (pole_margin_certificate(g, r, p) < cos_r - 1e-9
                or pole_margin_certificate(g, r, q) < cos_r - 1e-9):
            continue
        d_pq = spherical_distance(p, q)
        if d_pq > best:
            best, pair = d_pq, np.stack([p, q])
    return best, pair


# ---------------------------------------------------------------------------
# Width


@dataclass(frozen=True)
class WidthEstimate:
    """Upper estimate of the minimal width of a lune containing the body.

    ``witness`` is the realizing lune, or None in the degenerate hemisphere
    case (value pi). ``certified_lower`` records whether the estimate
    respects the theoretical floor value >= radius.
    """

    value: float
    witness: Lune | None
    certified_lower: bool
    n_boundary: int
    seed: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "certified_lower": self.certified_lower,
            "n_boundary": self.n_boundary,
            "seed": self.seed,
        }


def _slsqp_pole(u0: np.ndarray, v: np.ndarray, sample: np.ndarray) -> np.ndarray:
    """Move the pole u to minimize <u, v> subject to the sampled hemisphere
    constraints <u, p> >= 0 and |u| = 1. Falls back to u0 on failure."""
    cons = (
        {"type": "ineq", "fun": lambda u: sample @ u, "jac": lambda u: sample},
        {"type": "eq", "fun": lambda u: u @ u - 1.0, "jac": lambda u: 2.0 * u},
    )
    res = optimize.minimize(
        lambda u: float(u @ v), u0, jac=lambda u: v,
        method="SLSQP", constraints=cons,
        options={"maxiter": 80, "ftol": 1e-12},
    )
    u = np.asarray(res.x, dtype=float)
    nu = float(np.linalg.norm(u))
    if nu < 1e-9:
        return u0
    u = u / nu
    if float(np.min(sample @ u)) < -1e-7:
        return u0
    return u


def support_margin_nd(gens: GeneratorSet, pole: np.ndarray, sample: np.ndarray) -> float:
    """Upper estimate of min over the body of <pole, y>.

    Takes the minimum of the sampled margin and a local constrained solve
    seeded at the worst sample point. Both evaluate at feasible body
    points, so the result can only overstate the true margin: a negative
    value refutes the pole, a nonnegative one is not a proof (use
    pole_margin_certificate for that direction)."""
    sample_margin = float(np.min(sample @ pole))
    y0 = sample[int(np.argmin(sample @ pole))]
    cos_r = math.cos(gens.radius)
    cons = (
        {"type": "ineq", "fun": lambda y: gens.points @ y - cos_r, "jac": lambda y: gens.points},
        {"type": "eq", "fun": lambda y: y @ y - 1.0, "jac": lambda y: 2.0 * y},
    )
    res = optimize.minimize(
        lambda y: float(y @ pole), y0, jac=lambda y: pole,
        method="SLSQP", constraints=cons,
        options={"maxiter": 120, "ftol": 1e-14},
    )
    values = [sample_margin]
    y = np.asarray(res.x, dtype=float)
    ny = float(np.linalg.norm(y))
    if res.success and ny > 1e-9:
        y = y / ny
        if float(np.min(gens.points @ y)) >= cos_r - 1e-9:
            values.append(float(y @ pole))
    return min(values)


def pole_margin_certificate(points: np.ndarray, radius: float, pole) -> float:
    """Certified lower bound on min over the body of <pole, y>.

    For any nonnegative weights lam, every body point y satisfies
    <pole, y> = lam . (G y) - (G^T lam - pole) . y
             >= cos(radius) * sum(lam) - |G^T lam - pole|
    by the ball constraints and Cauchy-Schwarz, so maximizing the bound
    over lam >= 0 (concave, solved by projected quasi-Newton) certifies
    the margin from below; the bound is re-evaluated exactly at the final
    weights, so the result is sound regardless of solver quality. Unlike
    sampled margins this can prove feasibility, not just refute it.
    """
    g = np.asarray(points, dtype=float)
    u = np.asarray(pole, dtype=float)
    b = math.cos(radius)
    n = g.shape[0]

    def neg_bound(lam):
        w = g.T @ lam - u
        s = math.sqrt(float(w @ w) + 1e-24)
        return -(b * float(lam.sum()) - s), (g @ w) / s - b

    def exact_at(lam):
        lam = np.clip(np.asarray(lam, dtype=float), 0.0, None)
        return b * float(lam.sum()) - float(np.linalg.norm(g.T @ lam - u))

    sol0, *_ = np.linalg.lstsq(g.T, u, rcond=None)
    best = max(exact_at(np.zeros(n)), exact_at(sol0))
    for s0 in (np.clip(sol0, 0.0, None), np.full(n, 1.0 / n)):
        res = optimize.minimize(neg_bound, s0, jac=True, method="L-BFGS-B",
                                bounds=[(0.0, None)] * n,
                                options={"maxiter": 200, "ftol": 1e-16, "gtol": 1e-14})
        best = max(best, exact_at(res.x))
    return best


def _make_feasible(pole: np.ndarray, c: np.ndarray, margin_fn) -> tuple[np.ndarray, float]:
    """Slide an infeasible pole toward the interior direction c until its
    exact support margin clears zero.

    False-position root finding on the slerp parameter keeps the number of
    margin evaluations small (the margin can be an expensive solve for
    d >= 3); the returned pole is always from the feasible side."""
    m = margin_fn(pole)
    if m >= -1e-12:
        return pole, m
    omega = spherical_distance(pole, c)
    if omega < 1e-14:
        return pole, m

    def at(tau: float) -> np.ndarray:
        return (math.sin((1 - tau) * omega) * pole + math.sin(tau * omega) * c) / math.sin(omega)

    m_c = margin_fn(c)
    if m_c <= 0:
        return pole, m
    lo_t, lo_m = 0.0, m
    hi_t, hi_m = 1.0, m_c
    best_p, best_m = c, m_c
    for _ in range(16):
        if hi_m - lo_m > 1e-16:
            t = lo_t + (hi_t - lo_t) * (-lo_m) / (hi_m - lo_m)
        else:
            t = 0.5 * (lo_t + hi_t)
        t = min(max(t, lo_t + 1e-13), hi_t - 1e-13)
        p = at(t)
        mt = margin_fn(p)
        if mt >= 0.0:
            hi_t, hi_m = t, mt
            best_p, best_m = p, mt
        else:
            lo_t, lo_m = t, mt
        if hi_t - lo_t < 1e-12:
            break
    return best_p, best_m


def _top_pairs(points: np.ndarray, k: int) -> list[tuple[int, int]]:
    d = pairwise_distances(points)
    n = d.shape[0]
    pairs = [(float(d[i, j]), i, j) for i in range(n) for j in range(i + 1, n) if d[i, j] > 1e-12]
    pairs.sort(reverse=True)
    return [(i, j) for _, i, j in pairs[:k]]


def width_nd(gens: GeneratorSet, budget: int = 6, seed: int = 0, n_boundary: int = 512) -> WidthEstimate:
    """Stochastic minimization of lune width over lunes containing the body.

    Multistart local search over pole pairs: deterministic starts from the
    farthest generator pairs (whose collinear poles are exactly feasible),
    plus random supporting poles; each start alternates constrained solves
    against a boundary sample. Final candidates are repaired to exact
    feasibility, so the returned value is an upper bound on the true width
    up to solver tolerance.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    r = gens.radius
    rho = math.pi / 2 - r
    pts = gens.points

    if gens.n_points == 1 and rho < 1e-12:
        # Single hemisphere: no finite-width lune contains it.
        return WidthEstimate(math.pi, None, True, 0, seed)

    res = minimax_center(pts)
    c = res.center
    sample = boundary_sample_dual(gens, n_boundary, seed)

    if gens.dim == 2:
        from . import diskpoly

        boundary = diskpoly.boundary_structure(gens)

        def margin_fn(pole: np.ndarray) -> float:
            return diskpoly.support_margin_2d(gens, pole, boundary)
    else:
        # sampled margins refute but cannot prove feasibility, so final
        # acceptance goes through the sound certificate
        def margin_fn(pole: np.ndarray) -> float:
            return pole_margin_certificate(pts, r, pole)

    starts: list[tuple[np.ndarray, np.ndarray]] = []
    if gens.n_points == 1:
        e = tangent_basis(pts[0])[0]
        starts.append((geodesic_point(pts[0], e, rho), geodesic_point(pts[0], -e, rho)))
    for i, j in _top_pairs(pts, 3):
        t_ij = tangent_toward(pts[i], pts[j])
        t_ji = tangent_toward(pts[j], pts[i])
        starts.append((geodesic_point(pts[i], -t_ij, rho) if rho > 0 else pts[i],
                       geodesic_point(pts[j], -t_ji, rho) if rho > 0 else pts[j]))

    rng = np.random.default_rng([seed, 331])
    while len(starts) < budget:
        e = _tangent_dirs(c, 1, rng)[0]
        u0 = _supporting_pole(c, e, sample)
        v0 = _supporting_pole(c, -e, sample)
        starts.append((u0, v0))

    candidates: list[tuple[np.ndarray, np.ndarray]] = list(starts[:budget])
    for u0, v0 in starts[:budget]:
        u, v = u0.copy(), v0.copy()
        for _ in range(3):
            u = _slsqp_pole(u, v, sample)
            v = _slsqp_pole(v, u, sample)
        candidates.append((u, v))

    best_d = -1.0
    best_pair: tuple[np.ndarray, np.ndarray] | None = None
    for u, v in candidates:
        u, mu = _make_feasible(u, c, margin_fn)
        if mu < -1e-9:
            continue
        v, mv = _make_feasible(v, c, margin_fn)
        if mv < -1e-9:
            continue
        d_uv = spherical_distance(u, v)
        if d_uv > best_d:
            best_d, best_pair = d_uv, (u, v)

    if best_pair is None or best_d <= 1e-12:
        return WidthEstimate(math.pi, None, math.pi >= r - 1e-6, n_boundary, seed)
    value = math.pi - best_d
    witness = Lune(best_pair[0], best_pair[1]) if best_d < math.pi - 1e-12 else None
    return WidthEstimate(value, witness, value >= r - 1e-6, n_boundary, seed)


def _supporting_pole(c: np.ndarray, e: np.ndarray, sample: np.ndarray) -> np.ndarray:
    """Push a pole from the interior direction c outward along the great
    circle through c and tangent e until the sampled margin hits zero."""
    lo, hi = 0.0, math.pi
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        u = math.cos(mid) * c + math.sin(mid) * e
        if float(np.min(sample @ u)) >= 0.0:
            lo = mid
        else:
            hi = mid
    return math.cos(lo) * c + math.sin(lo) * e
