"""Minimum-norm solves of du = f and dbar u = g by degree-block normal equations.

Both solves take the adjoint route: seek beta with (op . op*) beta = f and
return u = op* beta.  Any solution beta of the normal equations gives the
same u (two solutions differ by ker(op*), which op* kills), and u = op* beta
is orthogonal to ker(op), i.e. it is the minimum-norm solution.

The normal operators d.T* and dbar.dbar* preserve total Hermite degree:
T* and dbar* raise it by exactly one (pure delta ladders) and d, dbar lower
it by exactly one.  Each total-degree block therefore solves independently
and exactly.  Within a block the Gram matrix <op* e_a, op* e_b> is extremely
sparse; we split it into its connected components and eliminate each small
dense piece, which is plain block-diagonal elimination of the degree block.

Closed polynomial data is always solvable: a form in the kernel of the
normal operator is killed by op*, and the coercivity bound (Hessian = 2 Id)
leaves no harmonic forms, so closed blocks lie in the range.  A least-squares
defect therefore signals a non-closed input and is reported as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .calculus import (Form01, PForm, codifferential, dbar_adjoint,
                       dbar_function, dbar_of_01, exterior_d)
from .errors import (DegreeOverflowError, DimensionMismatchError, DomainError,
                     NotClosedError, SolveNumericalError)
from .fields import ScalarField, Weight, hermite_sq_norm_vector
from .multiindex import MultiIndex, insert_axis, remove_axis
from .scalars import conj, imaginary_unit, scalar_is_zero, zero_scalar

FLOAT_BOUND_SLACK = 1e-12
CG_REL_TOL = 1e-13
CG_ITER_FACTOR = 10


@dataclass
class SolveReport:
    """Outcome of one solve: norms, the stated bound, and whether it held.

    ``residual_norm_sq`` is the squared L2 norm of the equation residual,
    matching the squared convention of the other norm fields (and staying
    rational in exact mode).
    """

    residual_norm_sq: object
    input_norm_sq: object
    output_norm_sq: object
    bound_constant: object
    ratio: object
    bound_satisfied: bool
    blocks_solved: int
    exact: bool = True

    @staticmethod
    def _render(v):
        return str(v) if isinstance(v, (Fraction, int)) else float(v)

    def to_json(self) -> dict:
        return {
            "residual": self._render(self.residual_norm_sq),
            "input_norm_sq": self._render(self.input_norm_sq),
            "output_norm_sq": self._render(self.output_norm_sq),
            "bound_constant": self._render(self.bound_constant),
            "ratio": self._render(self.ratio),
            "bound_satisfied": self.bound_satisfied,
            "blocks_solved": self.blocks_solved,
        }


def bound_holds(ratio, bound, exact: bool) -> bool:
    if exact:
        return ratio <= bound
    return ratio <= bound * (1 + FLOAT_BOUND_SLACK)


def _make_report(residual_sq, input_sq, output_sq, bound, blocks, exact) -> SolveReport:
    if input_sq == 0:
        ratio = Fraction(0) if exact else 0.0
    else:
        ratio = output_sq / input_sq
    return SolveReport(residual_sq, input_sq, output_sq, bound, ratio,
                       bound_holds(ratio, bound, exact), blocks, exact)


class _Inconsistent(Exception):
    def __init__(self, defect):
        self.defect = defect


def _solve_exact_gram(matrix, rhs, zero):
    """Rational Gaussian elimination with free variables pinned to zero."""
    k = len(matrix)
    rows = [list(matrix[i]) + [rhs[i]] for i in range(k)]
    piv_cols: list[int] = []
    piv_r = 0
    for c in range(k):
        pr = None
        for i in range(piv_r, k):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[piv_r], rows[pr] = rows[pr], rows[piv_r]
        pivot = rows[piv_r][c]
        for i in range(piv_r + 1, k):
            lead = rows[i][c]
            if lead != 0:
                factor = lead / pivot
                for cc in range(c, k + 1):
                    rows[i][cc] = rows[i][cc] - factor * rows[piv_r][cc]
        piv_cols.append(c)
        piv_r += 1
    for i in range(piv_r, k):
        if rows[i][k] != 0:
            raise _Inconsistent(rows[i][k])
    x = [zero] * k
    for rr in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[rr]
        s = rows[rr][k]
        for cc in range(c + 1, k):
            coeff = rows[rr][cc]
            if coeff != 0:
                s = s - coeff * x[cc]
        x[c] = s / rows[rr][c]
    return x


def _hdot(a, b):
    total = 0.0
    for x, y in zip(a, b):
        total = total + conj(x) * y
    return total


def _solve_cg_gram(matrix, rhs, block_degree: int):
    """Conjugate gradients on one Hermitian positive semidefinite block.

    Runs CG on the squared system A.A x = A r (Jacobi-scaled), which is
    consistent even when the right-hand side carries a tiny component outside
    range(A) -- sub-tolerance closedness dust in the input ends up there.
    The iterates stay in range(A), so the returned x is the least-squares
    solution with no kernel component; the caller's equation-level residual
    check judges any leftover defect.
    """
    k = len(matrix)
    # symmetric Jacobi scaling; Gram diagonals are strictly positive, but
    # guard anyway so the helper stands alone
    scale = [1.0 / math.sqrt(matrix[i][i].real) if matrix[i][i].real > 0.0 else 1.0
             for i in range(k)]
    a = [[matrix[i][j] * (scale[i] * scale[j]) for j in range(k)] for i in range(k)]
    b = [rhs[i] * scale[i] for i in range(k)]

    def matvec(vec):
        return [sum(a[i][j] * vec[j] for j in range(k)) for i in range(k)]

    x = [0.0 * b[0] for _ in range(k)]
    res = matvec(b)  # residual of A.A x = A b at x = 0
    p = list(res)
    rho = _hdot(res, res).real
    if rho == 0.0:
        return x
    target_sq = (CG_REL_TOL ** 2) * rho
    for _ in range(CG_ITER_FACTOR * k + 1):
        if rho <= target_sq:
            break
        aap = matvec(matvec(p))
        pap = _hdot(p, aap).real
        if pap <= 0.0:
            break
        alpha = rho / pap
        for i in range(k):
            x[i] = x[i] + alpha * p[i]
            res[i] = res[i] - alpha * aap[i]
        rho_new = _hdot(res, res).real
        beta = rho_new / rho
        rho = rho_new
        for i in range(k):
            p[i] = res[i] + beta * p[i]
    else:
        if rho > target_sq:
            raise SolveNumericalError(
                f"conjugate gradients failed to converge on degree-{block_degree} "
                f"block (size {k}, residual^2 {rho:.3e})", block_degree=block_degree)
    return [x[i] * scale[i] for i in range(k)]


def _solve_blocks(support, images_fn, preimages_fn, exact: bool, complex_kind: bool,
                  equation: str):
    """Solve the normal equations over each connected Gram component.

    ``support`` maps basis keys to scalar coefficients of the right-hand side.
    Returns the coefficient map of beta and the number of degree blocks touched.
    """
    zero = zero_scalar(exact, complex_kind)
    solution: dict = {}
    degrees_seen: set[int] = set()
    visited: set = set()
    for seed in sorted(support):
        if seed in visited:
            continue
        block_degree = sum(_deg_of(seed))
        degrees_seen.add(block_degree)
        # breadth-first closure of the Gram sparsity graph
        comp = [seed]
        visited.add(seed)
        cursor = 0
        while cursor < len(comp):
            elem = comp[cursor]
            cursor += 1
            for key, _ in images_fn(elem):
                for nb in preimages_fn(key):
                    if nb not in visited:
                        visited.add(nb)
                        comp.append(nb)
        comp.sort()
        k = len(comp)
        images = [images_fn(e) for e in comp]
        by_key: dict = {}
        for a, img in enumerate(images):
            for key, coeff in img:
                by_key.setdefault(key, []).append((a, coeff))
        matrix = [[zero for _ in range(k)] for _ in range(k)]
        for key, hits in by_key.items():
            weight = hermite_sq_norm_vector(_deg_of(key))
            if not exact:
                weight = float(weight)
            for a, ca in hits:
                for b, cb in hits:
                    matrix[b][a] = matrix[b][a] + ca * conj(cb) * weight
        rhs = []
        for e in comp:
            c = support.get(e)
            if c is None:
                rhs.append(zero)
            else:
                weight = hermite_sq_norm_vector(_deg_of(e))
                rhs.append(c * (weight if exact else float(weight)))
        if exact:
            try:
                x = _solve_exact_gram(matrix, rhs, zero)
            except _Inconsistent as exc:
                raise NotClosedError(
                    f"{equation}-solve: degree-{block_degree} block has a "
                    f"least-squares defect (input not closed?)",
                    residual_norm_sq=exc.defect) from None
        else:
            x = _solve_cg_gram(matrix, rhs, block_degree)
        for e, val in zip(comp, x):
            if not scalar_is_zero(val):
                solution[e] = val
    return solution, len(degrees_seen)


def _deg_of(key):
    # basis/image keys end with the degree vector
    return key[-1]


# ---------------------------------------------------------------------------
# du = f
# ---------------------------------------------------------------------------


def _d_images(n: int):
    idx_cache: dict = {}

    def images(elem):
        axes, deg = elem
        out = idx_cache.get(elem)
        if out is None:
            out = []
            M = MultiIndex(axes, n)
            for j in axes:
                sign, tgt = remove_axis(j, M)
                lifted = deg[:j - 1] + (deg[j - 1] + 1,) + deg[j:]
                out.append(((tgt.axes, lifted), sign))
            idx_cache[elem] = out
        return out

    return images


def _d_preimages(n: int):
    def preimages(key):
        axes, deg = key
        I = MultiIndex(axes, n)
        out = []
        for k in range(1, n + 1):
            if k in I or deg[k - 1] < 1:
                continue
            ins = insert_axis(k, I)
            assert ins is not None
            lowered = deg[:k - 1] + (deg[k - 1] - 1,) + deg[k:]
            out.append((ins[1].axes, lowered))
        return out

    return preimages


def solve_d_min_norm_full(f: PForm, weight: Weight, tolerance: float = 1e-10):
    """Solve du = f with the weighted Poincare bound; returns (u, beta, report)."""
    if f.p < 1:
        raise DomainError("du = f needs f of degree >= 1")
    if weight.m != f.n:
        raise DimensionMismatchError(f"weight on R^{weight.m}, form on R^{f.n}")
    p_out = f.p - 1
    bound = Fraction(1, 2 * f.p) if f.exact else 1.0 / (2 * f.p)
    zero_in = Fraction(0) if f.exact else 0.0
    if f.is_zero():
        u = PForm.zero(f.n, p_out, f.max_total_degree, f.kind, f.exact)
        beta = PForm.zero(f.n, f.p, f.max_total_degree, f.kind, f.exact)
        return u, beta, _make_report(zero_in, zero_in, zero_in, bound, 0, f.exact)

    df = exterior_d(f)
    if f.exact:
        if not df.is_zero():
            raise NotClosedError("du = f needs df = 0; exterior derivative is nonzero",
                                 residual_norm_sq=df.norm_sq())
    else:
        if df.norm_sq() > (tolerance ** 2) * f.norm_sq():
            raise NotClosedError(
                f"du = f needs df = 0; relative closedness residual "
                f"{math.sqrt(df.norm_sq() / f.norm_sq()):.3e} exceeds {tolerance:.1e}",
                residual_norm_sq=df.norm_sq())

    top = f.degree
    if top + 1 > f.max_total_degree:
        raise DegreeOverflowError(
            f"solve needs capacity {top + 1} (one above the data degree {top}), "
            f"have {f.max_total_degree}", required_capacity=top + 1)

    support = {}
    for idx, field in f.components.items():
        for deg, val in field.coeffs.items():
            support[(idx.axes, deg)] = val
    coeffs, blocks = _solve_blocks(support, _d_images(f.n), _d_preimages(f.n),
                                   f.exact, f.kind == "complex", "d")

    comp_fields: dict[MultiIndex, dict] = {}
    for (axes, deg), val in coeffs.items():
        comp_fields.setdefault(MultiIndex(axes, f.n), {})[deg] = val
    beta = PForm(f.n, f.p, f.max_total_degree, f.kind, f.exact,
                 {idx: ScalarField(f.n, f.max_total_degree, f.kind, f.exact, cc)
                  for idx, cc in comp_fields.items()})
    u = codifferential(beta, weight)

    residual = exterior_d(u) - f
    res_sq = residual.norm_sq()
    if f.exact and res_sq != 0:
        raise NotClosedError("exact solve left a nonzero residual; input is not closed",
                             residual_norm_sq=res_sq)
    if not f.exact and res_sq > (tolerance ** 2) * f.norm_sq():
        raise SolveNumericalError(
            f"float solve residual^2 {res_sq:.3e} exceeds tolerance", block_degree=None)
    report = _make_report(res_sq, f.norm_sq(), u.norm_sq(), bound, blocks, f.exact)
    return u, beta, report


def solve_d_min_norm(f: PForm, weight: Weight, tolerance: float = 1e-10):
    u, _, report = solve_d_min_norm_full(f, weight, tolerance)
    return u, report


# ---------------------------------------------------------------------------
# dbar u = g
# ---------------------------------------------------------------------------


def _dbar_images(exact: bool):
    half = Fraction(1, 2) if exact else 0.5
    minus_half_i = -imaginary_unit(exact) * half

    def images(elem):
        j, deg = elem
        a = 2 * j - 2  # zero-based real axis pair (a, a+1)
        lifted_x = deg[:a] + (deg[a] + 1,) + deg[a + 1:]
        lifted_y = deg[:a + 1] + (deg[a + 1] + 1,) + deg[a + 2:]
        return [((lifted_x,), half), ((lifted_y,), minus_half_i)]

    return images


def _dbar_preimages(n: int):
    def preimages(key):
        (deg,) = key
        out = []
        for j in range(1, n + 1):
            for axis in (2 * j - 2, 2 * j - 1):
                if deg[axis] >= 1:
                    lowered = deg[:axis] + (deg[axis] - 1,) + deg[axis + 1:]
                    out.append((j, lowered))
        return out

    return preimages


def solve_dbar_min_norm_full(g: Form01, weight: Weight, tolerance: float = 1e-10):
    """Solve dbar u = g with the Hormander-type bound 2; returns (u, beta, report)."""
    if weight.m != 2 * g.n:
        raise DimensionMismatchError(f"weight on R^{weight.m}, form on C^{g.n}")
    exact = g.exact
    bound = Fraction(2) if exact else 2.0
    zero_in = Fraction(0) if exact else 0.0
    if g.is_zero():
        u = ScalarField.zero(2 * g.n, g.max_total_degree, "complex", exact)
        beta = Form01.zero(g.n, g.max_total_degree, exact)
        return u, beta, _make_report(zero_in, zero_in, zero_in, bound, 0, exact)

    if g.n >= 2:
        dg = dbar_of_01(g)
        if exact:
            if not dg.is_zero():
                raise NotClosedError("dbar u = g needs dbar g = 0",
                                     residual_norm_sq=dg.norm_sq())
        else:
            if dg.norm_sq() > (tolerance ** 2) * g.norm_sq():
                raise NotClosedError(
                    f"dbar u = g needs dbar g = 0; relative residual exceeds {tolerance:.1e}",
                    residual_norm_sq=dg.norm_sq())

    top = g.degree
    if top + 1 > g.max_total_degree:
        raise DegreeOverflowError(
            f"solve needs capacity {top + 1} (one above the data degree {top}), "
            f"have {g.max_total_degree}", required_capacity=top + 1)

    support = {}
    for j, field in enumerate(g.components, start=1):
        for deg, val in field.coeffs.items():
            support[(j, deg)] = val
    coeffs, blocks = _solve_blocks(support, _dbar_images(exact), _dbar_preimages(g.n),
                                   exact, True, "dbar")

    per_component: list[dict] = [{} for _ in range(g.n)]
    for (j, deg), val in coeffs.items():
        per_component[j - 1][deg] = val
    beta = Form01([ScalarField(2 * g.n, g.max_total_degree, "complex", exact, cc)
                   for cc in per_component])
    u = dbar_adjoint(beta, weight)

    residual = dbar_function(u) - g
    res_sq = residual.norm_sq()
    if exact and res_sq != 0:
        raise NotClosedError("exact solve left a nonzero residual; input is not closed",
                             residual_norm_sq=res_sq)
    if not exact and res_sq > (tolerance ** 2) * g.norm_sq():
        raise SolveNumericalError(
            f"float solve residual^2 {res_sq:.3e} exceeds tolerance", block_degree=None)
    report = _make_report(res_sq, g.norm_sq(), u.norm_sq(), bound, blocks, exact)
    return u, beta, report


def solve_dbar_min_norm(g: Form01, weight: Weight, tolerance: float = 1e-10):
    u, _, report = solve_dbar_min_norm_full(g, weight, tolerance)
    return u, report
