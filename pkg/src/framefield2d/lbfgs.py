"""Limited-memory BFGS with a strong-Wolfe line search.

Plain two-loop recursion over an (s, y) history, gamma scaling from the most
recent pair, and a bracket/zoom line search. Curvature pairs are only stored
when s.y is safely positive; a failed line search clears the history and
retries once along steepest descent before giving up.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .energy import make_model
from .graph import FieldGraph, FrameField, Provenance


class NonFiniteObjective(RuntimeError):
    """Objective or gradient stopped being finite; carries the last good point."""

    def __init__(self, message: str, x_last: np.ndarray | None = None, f_last: float | None = None):
        super().__init__(message)
        self.x_last = x_last
        self.f_last = f_last


@dataclass(frozen=True)
class SolverConfig:
    memory: int = 10
    grad_tol: float = 1e-6  # infinity norm
    max_iters: int = 2000
    wolfe_c1: float = 1e-4
    wolfe_c2: float = 0.9
    max_line_search_steps: int = 40

    def __post_init__(self):
        if not (0.0 < self.wolfe_c1 < self.wolfe_c2 < 1.0):
            raise ValueError("need 0 < c1 < c2 < 1")
        if self.memory < 1:
            raise ValueError("memory must be >= 1")
        if self.grad_tol <= 0.0:
            raise ValueError("grad_tol must be positive")


@dataclass
class SolveResult:
    x_final: np.ndarray
    f_final: float
    grad_norm: float
    iterations: int
    status: str  # converged | max_iters | line_search_failed
    trace: list[tuple[float, float]] = field(default_factory=list)


def _inf_norm(v: np.ndarray) -> float:
    return float(np.max(np.abs(v))) if len(v) else 0.0


def two_loop_direction(history, grad: np.ndarray) -> np.ndarray:
    """-H.grad for the L-BFGS inverse-Hessian approximation.

    `history` holds (s, y, rho) triples, oldest first, with rho = 1/(s.y);
    the initial Hessian is gamma*I with gamma = (s.y)/(y.y) from the most
    recent pair. Empty history gives steepest descent.
    """
    if not history:
        return -np.asarray(grad, dtype=float)
    q = np.array(grad, dtype=float)
    alphas = []
    for s, y, rho in reversed(history):
        a = rho * float(s @ q)
        alphas.append(a)
        q -= a * y
    s_last, y_last, _ = history[-1]
    gamma = float(s_last @ y_last) / float(y_last @ y_last)
    r = gamma * q
    for (s, y, rho), a in zip(history, reversed(alphas)):
        b = rho * float(y @ r)
        r += (a - b) * s
    return -r


def line_search_wolfe(objective, x, direction, f0, g0dotdir, *,
                      c1: float = 1e-4, c2: float = 0.9, max_steps: int = 40):
    """Strong-Wolfe step along `direction`, starting from alpha = 1.

    Returns (alpha, f_alpha, grad_alpha) or None after exhausting the
    evaluation budget. `objective` maps a point to (value, gradient).
    """
    if g0dotdir >= 0.0:
        raise ValueError("line search needs a descent direction")
    x = np.asarray(x, dtype=float)
    direction = np.asarray(direction, dtype=float)
    budget = [max_steps]

    def phi(alpha: float):
        budget[0] -= 1
        f, g = objective(x + alpha * direction)
        if not (np.isfinite(f) and np.all(np.isfinite(g))):
            raise NonFiniteObjective(f"non-finite objective at step {alpha}")
        return f, g, float(g @ direction)

    def zoom(a_lo, f_lo, a_hi):
        while budget[0] > 0:
            a = 0.5 * (a_lo + a_hi)
            f_a, g_a, dg_a = phi(a)
            if f_a > f0 + c1 * a * g0dotdir or f_a >= f_lo:
                a_hi = a
            else:
                if abs(dg_a) <= -c2 * g0dotdir:
                    return a, f_a, g_a
                if dg_a * (a_hi - a_lo) >= 0.0:
                    a_hi = a_lo
                a_lo, f_lo = a, f_a
        return None

    a_prev, f_prev = 0.0, f0
    a = 1.0
    first = True
    while budget[0] > 0:
        f_a, g_a, dg_a = phi(a)
        if f_a > f0 + c1 * a * g0dotdir or (not first and f_a >= f_prev):
            return zoom(a_prev, f_prev, a)
        if abs(dg_a) <= -c2 * g0dotdir:
            return a, f_a, g_a
        if dg_a >= 0.0:
            return zoom(a, f_a, a_prev)
        a_prev, f_prev = a, f_a
        a *= 2.0
        first = False
    return None


def minimize(objective, x0: np.ndarray, config: SolverConfig | None = None) -> SolveResult:
    """Run L-BFGS until the gradient tolerance, iteration cap, or line-search
    failure. Curvature pairs with s.y <= 1e-10 ||s|| ||y|| are skipped."""
    config = config or SolverConfig()
    x = np.array(x0, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("x0 must be finite")
    f, g = objective(x)
    if not (np.isfinite(f) and np.all(np.isfinite(g))):
        raise NonFiniteObjective("non-finite objective at x0", x_last=x, f_last=f)
    trace = [(float(f), _inf_norm(g))]
    history: deque = deque(maxlen=config.memory)
    status = "max_iters"
    iterations = 0

    for it in range(1, config.max_iters + 1):
        if _inf_norm(g) <= config.grad_tol:
            status = "converged"
            break
        d = two_loop_direction(history, g)
        dg = float(g @ d)
        if dg >= 0.0:
            history.clear()
            d = -g
            dg = float(g @ d)
        try:
            hit = line_search_wolfe(
                objective, x, d, f, dg,
                c1=config.wolfe_c1, c2=config.wolfe_c2,
                max_steps=config.max_line_search_steps,
            )
            if hit is None and history:
                history.clear()
                d = -g
                hit = line_search_wolfe(
                    objective, x, d, f, float(g @ d),
                    c1=config.wolfe_c1, c2=config.wolfe_c2,
                    max_steps=config.max_line_search_steps,
                )
        except NonFiniteObjective as exc:
            exc.x_last = x
            exc.f_last = f
            raise
        if hit is None:
            status = "line_search_failed"
            break
        alpha, f_new, g_new = hit
        s = alpha * d
        y = g_new - g
        sy = float(s @ y)
        if sy > 1e-10 * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
            rho = 1.0 / sy
            history.append((s, y, rho))
        x = x + s
        f, g = f_new, g_new
        iterations = it
        trace.append((float(f), _inf_norm(g)))
    else:
        if _inf_norm(g) <= config.grad_tol:
            status = "converged"

    return SolveResult(
        x_final=x,
        f_final=float(f),
        grad_norm=_inf_norm(g),
        iterations=iterations,
        status=status,
        trace=trace,
    )


def solve_field_lbfgs(
    graph: FieldGraph,
    theta0: np.ndarray,
    config: SolverConfig | None = None,
    *,
    init_name: str = "",
    seed: int | None = None,
) -> tuple[FrameField, SolveResult]:
    """Minimize the frame energy over the free nodes of `graph`.

    theta0 must already satisfy the constraints exactly; the constrained
    entries are carried through untouched.
    """
    theta0 = np.asarray(theta0, dtype=float)
    if theta0.shape != (graph.node_count,):
        raise ValueError("theta0 has wrong length")
    mask = graph.constraint_mask
    if not np.array_equal(theta0[mask], graph.constraint_angle[mask]):
        raise ValueError("theta0 violates the boundary constraints")

    model = make_model(graph)
    result = minimize(model.value_and_grad, theta0[model.free_nodes], config)
    theta = theta0.copy()
    theta[model.free_nodes] = result.x_final
    fld = FrameField(
        theta=theta,
        graph_key=graph.key(),
        provenance=Provenance(solver="lbfgs", init=init_name, seed=seed),
        iterations=result.iterations,
        status=result.status,
    )
    return fld, result
