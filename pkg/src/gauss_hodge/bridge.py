"""Conversion between (1,1)-forms on C^n and real forms on R^{2n}, and the
end-to-end pipeline solving the Poincare-Lelong equation ddbar u = f.

Coordinates are paired as z_j = x_{2j-1} + i x_{2j}.  Writing each entry
f_{ij} = A_{ij} + i B_{ij} and expanding dz_i ^ dzbar_j in the real frame
gives the decomposition f = f1 + i f2 into real 2-forms with

    f1 = sum_{i<j} (A_{ij} - A_{ji}) (dx_i^dx_j + dy_i^dy_j)
         + sum_{i,j} (B_{ij} + B_{ji}) dx_i^dy_j
    f2 = sum_{i<j} (B_{ij} - B_{ji}) (dx_i^dx_j + dy_i^dy_j)
         - sum_{i,j} (A_{ij} + A_{ji}) dx_i^dy_j

and the pointwise identity |f1|^2 + |f2|^2 = 4 |f|^2.

The pipeline runs the constructive proof: solve d v_k = f_k with bound 1/4,
split v_k by bidegree (each half carrying a quarter of the squared norm),
solve dbar u_k = v_k^{0,1} with bound 2, and assemble
u = (u_1 - conj u_1) + i (u_2 - conj u_2), giving ||u||^2 <= 2 ||f||^2.
Every stage bound and every type-purity identity is checked on the way and
raises InvariantViolationError if it fails; for valid closed inputs these
are mathematically guaranteed and must never fire.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .calculus import (ComplexForm11, Form01, Form02, Form10, Form20, PForm,
                       dbar_of_01, ddbar, exterior_d, partial_of_10)
from .errors import (DegreeOverflowError, DimensionMismatchError, DomainError,
                     InvariantViolationError, NotClosedError)
from .fields import COMPLEX, REAL, ScalarField, Weight
from .multiindex import MultiIndex
from .scalars import imaginary_unit
from .solver import SolveReport, bound_holds, solve_d_min_norm_full, solve_dbar_min_norm_full


def _add_wedge(store: dict, a: int, b: int, n2: int, f: ScalarField):
    """Accumulate f dx_a ^ dx_b into increasing-index storage (antisymmetric)."""
    if f.is_zero():
        return
    if a == b:
        return
    if a > b:
        a, b = b, a
        f = -f
    key = MultiIndex((a, b), n2)
    cur = store.get(key)
    s = f if cur is None else cur + f
    if s.is_zero():
        store.pop(key, None)
    else:
        store[key] = s


def decompose_11(f: ComplexForm11) -> tuple[PForm, PForm]:
    """Split a (1,1)-form into real 2-forms with f = f1 + i f2."""
    n = f.n
    n2 = 2 * n
    cap = f.max_total_degree
    exact = f.exact
    parts_a = [[f.entry(i, j).real_part() for j in range(1, n + 1)] for i in range(1, n + 1)]
    parts_b = [[f.entry(i, j).imag_part() for j in range(1, n + 1)] for i in range(1, n + 1)]
    store1: dict = {}
    store2: dict = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            A_ij = parts_a[i - 1][j - 1]
            A_ji = parts_a[j - 1][i - 1]
            B_ij = parts_b[i - 1][j - 1]
            B_ji = parts_b[j - 1][i - 1]
            if i < j:
                diff_a = A_ij - A_ji
                diff_b = B_ij - B_ji
                for (a, b) in ((2 * i - 1, 2 * j - 1), (2 * i, 2 * j)):
                    _add_wedge(store1, a, b, n2, diff_a)
                    _add_wedge(store2, a, b, n2, diff_b)
            _add_wedge(store1, 2 * i - 1, 2 * j, n2, B_ij + B_ji)
            _add_wedge(store2, 2 * i - 1, 2 * j, n2, -(A_ij + A_ji))
    f1 = PForm(n2, 2, cap, REAL, exact, store1)
    f2 = PForm(n2, 2, cap, REAL, exact, store2)
    return f1, f2


def two_form_complex_parts(g: PForm) -> tuple[Form20, ComplexForm11, Form02]:
    """Write a real-frame 2-form in the complex frame.

    Returns the (2,0), (1,1) and (0,2) parts, using
    dx_{2i-1} = (dz_i + dzbar_i)/2 and dx_{2i} = (dz_i - dzbar_i)/(2i).
    """
    if g.p != 2 or g.n % 2 != 0:
        raise DomainError("need a 2-form on an even-dimensional real space")
    n = g.n // 2
    gc = g.promote_complex()
    exact = g.exact
    cap = g.max_total_degree
    i_unit = imaginary_unit(exact)
    half = Fraction(1, 2) if exact else 0.5
    zero = ScalarField.zero(2 * n, cap, COMPLEX, exact)

    def frame_weights(axis: int):
        # dx_axis = wz * dz_pair + wzbar * dzbar_pair
        pair = (axis + 1) // 2
        if axis % 2 == 1:
            return pair, half, half
        return pair, -i_unit * half, i_unit * half

    part20: dict = {}
    part11 = [[zero for _ in range(n)] for _ in range(n)]
    part02: dict = {}

    def add20(i, k, fld):
        if i == k:
            return
        if i > k:
            i, k = k, i
            fld = -fld
        cur = part20.get((i, k), zero)
        part20[(i, k)] = cur + fld

    def add02(j, l, fld):
        if j == l:
            return
        if j > l:
            j, l = l, j
            fld = -fld
        cur = part02.get((j, l), zero)
        part02[(j, l)] = cur + fld

    for idx, fld in gc.components.items():
        a, b = idx.axes
        pa, za, zba = frame_weights(a)
        pb, zb, zbb = frame_weights(b)
        # dz ^ dz
        add20(pa, pb, fld.scale(za * zb))
        # dzbar ^ dzbar
        add02(pa, pb, fld.scale(zba * zbb))
        # dz_pa ^ dzbar_pb and dz_pb ^ dzbar_pa (the latter from dzbar_pa ^ dz_pb)
        t = fld.scale(za * zbb)
        part11[pa - 1][pb - 1] = part11[pa - 1][pb - 1] + t
        t = fld.scale(zba * zb)
        part11[pb - 1][pa - 1] = part11[pb - 1][pa - 1] - t
    return (Form20(n, cap, exact, part20), ComplexForm11(part11),
            Form02(n, cap, exact, part02))


def recompose_11(f1: PForm, f2: PForm) -> ComplexForm11:
    """Rebuild the complex frame from the two real 2-forms; the (2,0) and
    (0,2) parts of f1 + i f2 must vanish for a genuine (1,1)-form."""
    combined = f1.promote_complex() + f2.promote_complex().scale(imaginary_unit(f1.exact))
    part20, part11, part02 = two_form_complex_parts(combined)
    if not part20.is_zero() or not part02.is_zero():
        raise DomainError("f1 + i f2 is not of pure type (1,1)")
    return part11


def split_bidegree(v: PForm) -> tuple[Form10, Form01]:
    """Split a real-frame 1-form into its (1,0) and (0,1) parts:

    v10_j = v_{2j-1}/2 + v_{2j}/(2i),   v01_j = v_{2j-1}/2 - v_{2j}/(2i).
    """
    if v.p != 1 or v.n % 2 != 0:
        raise DomainError("need a 1-form on an even-dimensional real space")
    n = v.n // 2
    vc = v.promote_complex()
    exact = v.exact
    half = Fraction(1, 2) if exact else 0.5
    i_unit = imaginary_unit(exact)
    comps10 = []
    comps01 = []
    for j in range(1, n + 1):
        vx = vc.component(MultiIndex((2 * j - 1,), v.n))
        vy = vc.component(MultiIndex((2 * j,), v.n))
        # 1/(2i) = -i/2
        comps10.append(vx.scale(half) + vy.scale(-i_unit * half))
        comps01.append(vx.scale(half) + vy.scale(i_unit * half))
    return Form10(comps10), Form01(comps01)


@dataclass
class PipelineReport:
    """Stage-by-stage record of one Poincare-Lelong solve."""

    d_solve_re: SolveReport
    d_solve_im: SolveReport
    dbar_solve_re: SolveReport
    dbar_solve_im: SolveReport
    final: SolveReport
    conjugation_ratios: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "stages": {
                "d_solve_re": self.d_solve_re.to_json(),
                "d_solve_im": self.d_solve_im.to_json(),
                "dbar_solve_re": self.dbar_solve_re.to_json(),
                "dbar_solve_im": self.dbar_solve_im.to_json(),
            },
            "conjugation_ratios": {k: SolveReport._render(v)
                                   for k, v in self.conjugation_ratios.items()},
            "final": self.final.to_json(),
            "final_ratio": SolveReport._render(self.final.ratio),
        }


def _check_stage_bound(report: SolveReport, stage: str):
    if not report.bound_satisfied:
        raise InvariantViolationError(
            stage, f"stage bound {report.bound_constant} violated: "
                   f"output^2 {report.output_norm_sq}, input^2 {report.input_norm_sq}",
            lhs=report.output_norm_sq, rhs=report.input_norm_sq)


def solve_poincare_lelong_full(f: ComplexForm11, weight: Optional[Weight] = None,
                               tolerance: float = 1e-10):
    """Run the full constructive solve of ddbar u = f; returns (u, report)."""
    n = f.n
    exact = f.exact
    if weight is None:
        weight = Weight.standard(2 * n)
    if weight.m != 2 * n:
        raise DimensionMismatchError(f"weight on R^{weight.m}, form on C^{n}")

    zero_s = Fraction(0) if exact else 0.0
    two = Fraction(2) if exact else 2.0
    if f.is_zero():
        u = ScalarField.zero(2 * n, f.max_total_degree, COMPLEX, exact)
        empty = SolveReport(zero_s, zero_s, zero_s,
                            Fraction(1, 4) if exact else 0.25,
                            zero_s, True, 0, exact)
        empty_dbar = SolveReport(zero_s, zero_s, zero_s, two, zero_s, True, 0, exact)
        final = SolveReport(zero_s, zero_s, zero_s, two, zero_s, True, 0, exact)
        return u, PipelineReport(empty, empty, empty_dbar, empty_dbar, final)

    top = f.degree
    if top + 2 > f.max_total_degree:
        raise DegreeOverflowError(
            f"pipeline needs capacity {top + 2} (two above the data degree {top}), "
            f"have {f.max_total_degree}", required_capacity=top + 2)

    # (1) split into real 2-forms; d-closedness of f is equivalent to
    #     d f1 = d f2 = 0 by type separation.
    f1, f2 = decompose_11(f)
    f_scale_sq = f.norm_sq()
    for name, fk in (("re", f1), ("im", f2)):
        dfk = exterior_d(fk)
        if exact:
            if not dfk.is_zero():
                raise NotClosedError(f"ddbar u = f needs df = 0; the {name} part is not closed",
                                     residual_norm_sq=dfk.norm_sq())
        elif dfk.norm_sq() > (tolerance ** 2) * f_scale_sq:
            raise NotClosedError(f"ddbar u = f needs df = 0; the {name} part is not closed",
                                 residual_norm_sq=dfk.norm_sq())

    # (2) weighted Poincare solves d v_k = f_k, bound 1/4
    v1, _, rep_d1 = solve_d_min_norm_full(f1, weight, tolerance)
    v2, _, rep_d2 = solve_d_min_norm_full(f2, weight, tolerance)
    _check_stage_bound(rep_d1, "d_solve_re")
    _check_stage_bound(rep_d2, "d_solve_im")

    us = []
    dbar_reports = []
    conj_ratios = {}
    for name, vk in (("re", v1), ("im", v2)):
        # (3) bidegree split; the (2,0) and (0,2) pieces of d v_k must vanish
        v10, v01 = split_bidegree(vk)
        purity_20 = partial_of_10(v10)
        purity_02 = dbar_of_01(v01)
        if exact:
            if not purity_20.is_zero() or not purity_02.is_zero():
                raise InvariantViolationError(
                    f"type_purity_{name}", "partial v10 or dbar v01 is nonzero",
                    lhs=purity_20.norm_sq(), rhs=purity_02.norm_sq())
        else:
            scale = max(vk.norm_sq(), 1.0)
            if purity_20.norm_sq() > (tolerance ** 2) * scale \
                    or purity_02.norm_sq() > (tolerance ** 2) * scale:
                raise InvariantViolationError(
                    f"type_purity_{name}", "partial v10 or dbar v01 exceeds tolerance",
                    lhs=purity_20.norm_sq(), rhs=purity_02.norm_sq())

        # (4) Hormander solve dbar u_k = v_k^{0,1}, bound 2
        uk, _, rep_dbar = solve_dbar_min_norm_full(v01, weight, tolerance)
        _check_stage_bound(rep_dbar, f"dbar_solve_{name}")
        dbar_reports.append(rep_dbar)

        # (5) u_k - conj(u_k) obeys the Cauchy-Schwarz factor 4
        wk = uk - uk.conjugate()
        wk_sq = wk.norm_sq()
        uk_sq = uk.norm_sq()
        if not bound_holds(wk_sq, 4 * uk_sq, exact):
            raise InvariantViolationError(
                f"conjugation_{name}", "||u - conj u||^2 > 4 ||u||^2",
                lhs=wk_sq, rhs=uk_sq)
        conj_ratios[name] = wk_sq / uk_sq if uk_sq != 0 else zero_s
        us.append(wk)

    u = us[0] + us[1].scale(imaginary_unit(exact))

    residual = ddbar(u) - f
    res_sq = residual.norm_sq()
    f_sq = f.norm_sq()
    if exact:
        if res_sq != 0:
            raise InvariantViolationError("final_residual", "ddbar u != f in exact mode",
                                          lhs=res_sq, rhs=f_sq)
    elif res_sq > (tolerance ** 2) * f_sq:
        raise InvariantViolationError("final_residual", "ddbar u residual exceeds tolerance",
                                      lhs=res_sq, rhs=f_sq)

    u_sq = u.norm_sq()
    ratio = u_sq / f_sq if f_sq != 0 else zero_s
    final = SolveReport(res_sq, f_sq, u_sq, two, ratio,
                        bound_holds(ratio, two, exact),
                        rep_d1.blocks_solved + rep_d2.blocks_solved
                        + dbar_reports[0].blocks_solved + dbar_reports[1].blocks_solved,
                        exact)
    if not final.bound_satisfied:
        raise InvariantViolationError("final_bound", "||u||^2 > 2 ||f||^2",
                                      lhs=u_sq, rhs=f_sq)
    report = PipelineReport(rep_d1, rep_d2, dbar_reports[0], dbar_reports[1],
                            final, conj_ratios)
    return u, report


def solve_poincare_lelong(f: ComplexForm11, weight: Optional[Weight] = None,
                          tolerance: float = 1e-10):
    """Solve ddbar u = f; returns (u, final SolveReport) with bound constant 2."""
    u, report = solve_poincare_lelong_full(f, weight, tolerance)
    return u, report.final
