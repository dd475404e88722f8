"""Fixed-point baselines: step formulas, iteration counts, linear rate,
and agreement with the doubling solvent."""

import math

import numpy as np
import pytest

from qme.bernoulli import FixedPointKind, fp_solve, fp_step
from qme.problem import gen_example1, gen_example2, validate
from qme.sda import SdaOptions, SolveStatus, solve


def scalar_problem():
    return validate(np.array([[3.0]]), np.array([[1.0]]))


class TestStep:
    def test_first_step_from_zero(self):
        # both kinds give X1 = -B^-1 C from X0 = 0
        p = scalar_problem()
        z = np.zeros((1, 1))
        for kind in FixedPointKind:
            assert fp_step(p, z, kind)[0, 0] == pytest.approx(-1.0 / 3.0, abs=1e-16)

    def test_second_steps_differ(self):
        # from X1 = -1/3: BL gives -(3 - 1/3)^-1 = -3/8,
        # BLL gives -(1/9 + 1)/3 = -10/27
        p = scalar_problem()
        x1 = np.array([[-1.0 / 3.0]])
        assert fp_step(p, x1, FixedPointKind.BL)[0, 0] == pytest.approx(
            -3.0 / 8.0, abs=1e-15
        )
        assert fp_step(p, x1, FixedPointKind.BLL)[0, 0] == pytest.approx(
            -10.0 / 27.0, abs=1e-15
        )

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            fp_step(scalar_problem(), np.zeros((1, 1)), "bl")


class TestConvergence:
    @pytest.mark.parametrize(
        "kind,make,n,want",
        [
            (FixedPointKind.BL, gen_example1, 30, 11),
            (FixedPointKind.BL, gen_example1, 100, 11),
            (FixedPointKind.BLL, gen_example1, 30, 13),
            (FixedPointKind.BLL, gen_example1, 100, 13),
            (FixedPointKind.BLL, gen_example2, 20, 143),
            (FixedPointKind.BL, gen_example2, 100, 325),
        ],
    )
    def test_iteration_counts(self, kind, make, n, want):
        rep = fp_solve(make(n), kind)
        assert rep.status is SolveStatus.CONVERGED
        assert rep.iterations == want
        assert rep.final_nres < 1e-12

    @pytest.mark.parametrize("kind", list(FixedPointKind))
    def test_agrees_with_doubling_solvent(self, kind):
        p = gen_example1(30)
        fp = fp_solve(p, kind)
        dbl = solve(p)
        scale = np.max(np.abs(dbl.phi))
        assert np.max(np.abs(fp.phi - dbl.phi)) <= 1e-9 * scale

    @pytest.mark.parametrize("kind", list(FixedPointKind))
    def test_monotone_from_zero(self, kind):
        p = gen_example2(10)
        rep = fp_solve(p, kind)
        dbl = solve(p)
        tolm = 1e-10
        for prev_x, cur_x in zip(rep.xs, rep.xs[1:]):
            assert (cur_x <= prev_x + tolm).all()
        for x in rep.xs:
            assert (x >= dbl.phi - tolm).all()

    def test_zero_c_converges_at_iteration_zero(self):
        p = validate(3.0 * np.eye(2), np.zeros((2, 2)))
        for kind in FixedPointKind:
            rep = fp_solve(p, kind)
            assert rep.status is SolveStatus.CONVERGED
            assert rep.iterations == 0

    def test_linear_rate(self):
        # residual reduction per step settles to a constant factor:
        # over the last recorded steps the ratio varies by little
        rep = fp_solve(gen_example2(20), FixedPointKind.BLL)
        rs = [r for (_, r, _) in rep.history if r > 0.0]
        ratios = [b / a for a, b in zip(rs, rs[1:])]
        tail = ratios[-50:]
        mid = sorted(tail)[len(tail) // 2]
        assert all(abs(t - mid) <= 0.05 * mid for t in tail)
        assert 0.0 < mid < 1.0


class TestReport:
    def test_report_shape(self):
        rep = fp_solve(gen_example1(30), FixedPointKind.BL)
        assert rep.method == "bl"
        assert rep.psi is None and rep.ys is None
        assert rep.invariant_log == []
        assert len(rep.history) == rep.iterations + 1
        assert all(d is None for (_, _, d) in rep.history)

    def test_method_names(self):
        p = scalar_problem()
        assert fp_solve(p, FixedPointKind.BL).method == "bl"
        assert fp_solve(p, FixedPointKind.BLL).method == "bll"

    def test_max_iterations(self):
        rep = fp_solve(gen_example2(20), FixedPointKind.BLL, SdaOptions(kmax=5))
        assert rep.status is SolveStatus.MAX_ITERATIONS
        assert rep.iterations == 5

    def test_json_psi_null(self):
        import json

        doc = json.loads(fp_solve(scalar_problem(), FixedPointKind.BL).to_json())
        assert doc["psi"] is None
        assert doc["method"] == "bl"

    def test_track_history_off(self):
        rep = fp_solve(
            gen_example1(30), FixedPointKind.BL, SdaOptions(track_history=False)
        )
        assert rep.history == [] and rep.xs is None
        assert rep.status is SolveStatus.CONVERGED
        assert rep.iterations == 11
