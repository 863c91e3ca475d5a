"""Derivative-free minimizers used by the fitting code.

Both work on unconstrained real vectors (the callers optimize
log-parameters, so positivity is automatic) and both are deterministic:
Nelder-Mead by construction, the genetic algorithm given its seed.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class MinimizeResult:
    x: np.ndarray
    fun: float
    evaluations: int
    converged: bool


def nelder_mead(f, x0, step=0.1, tolerance=1e-8, max_evaluations=20000):
    """Simplex minimization (reflection 1, expansion 2, contraction 0.5,
    shrink 0.5).  Converged when the simplex diameter (max pairwise
    inf-norm) drops below ``tolerance``."""
    x0 = np.asarray(x0, dtype=np.float64)
    dim = x0.size
    simplex = [x0.copy()]
    for i in range(dim):
        v = x0.copy()
        v[i] += step
        simplex.append(v)
    simplex = np.array(simplex)

    evals = 0

    def ev(x):
        nonlocal evals
        evals += 1
        v = f(x)
        return v if np.isfinite(v) else np.inf

    fvals = np.array([ev(v) for v in simplex])

    def diameter():
        d = 0.0
        for i in range(dim + 1):
            for j in range(i + 1, dim + 1):
                d = max(d, np.max(np.abs(simplex[i] - simplex[j])))
        return d

    converged = False
    while evals < max_evaluations:
        order = np.argsort(fvals, kind="stable")
        simplex, fvals = simplex[order], fvals[order]
        if diameter() < tolerance:
            converged = True
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + (centroid - worst)
        fr = ev(xr)
        if fr < fvals[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = ev(xe)
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
        elif fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
        else:
            if fr < fvals[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (worst - centroid)
            fc = ev(xc)
            if fc < min(fr, fvals[-1]):
                simplex[-1], fvals[-1] = xc, fc
            else:
                # shrink toward the best vertex
                for i in range(1, dim + 1):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    fvals[i] = ev(simplex[i])

    best = int(np.argmin(fvals))
    return MinimizeResult(simplex[best].copy(), float(fvals[best]), evals, converged)


def genetic(f, x0, seed=0, span=2.0, population=50, tolerance=1e-8,
            max_evaluations=20000, crossover_alpha=0.5, mutation_prob=0.2,
            mutation_sd=0.3, elite=2, tournament=3):
    """Real-coded GA: tournament selection, BLX-alpha crossover, Gaussian
    mutation, elitism.  The search box is x0 +- span per coordinate."""
    rng = np.random.default_rng(seed)
    x0 = np.asarray(x0, dtype=np.float64)
    dim = x0.size
    lo, hi = x0 - span, x0 + span

    evals = 0

    def ev(x):
        nonlocal evals
        evals += 1
        v = f(x)
        return v if np.isfinite(v) else np.inf

    pop = rng.uniform(lo, hi, size=(population, dim))
    pop[0] = x0
    fit = np.array([ev(v) for v in pop])

    converged = False
    while evals + population <= max_evaluations:
        spread = float(np.max(pop.max(axis=0) - pop.min(axis=0)))
        if spread < tolerance:
            converged = True
            break
        order = np.argsort(fit, kind="stable")
        pop, fit = pop[order], fit[order]
        nxt = [pop[i].copy() for i in range(elite)]
        while len(nxt) < population:
            # tournament pick of two parents
            idx = rng.integers(0, population, size=(2, tournament))
            pa = pop[idx[0][np.argmin(fit[idx[0]])]]
            pb = pop[idx[1][np.argmin(fit[idx[1]])]]
            lo_c = np.minimum(pa, pb)
            hi_c = np.maximum(pa, pb)
            width = hi_c - lo_c
            child = rng.uniform(lo_c - crossover_alpha * width,
                                hi_c + crossover_alpha * width)
            mask = rng.random(dim) < mutation_prob
            child = np.where(mask, child + rng.normal(0.0, mutation_sd, dim), child)
            nxt.append(np.clip(child, lo, hi))
        pop = np.array(nxt)
        fit = np.concatenate([fit[:elite], [ev(v) for v in pop[elite:]]])

    best = int(np.argmin(fit))
    return MinimizeResult(pop[best].copy(), float(fit[best]), evals, converged)
