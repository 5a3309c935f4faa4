"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines. Criterion 5's agreement clause is asserted exactly as stated; see the
module docstring of test_criterion_5_agreement for why it cannot hold on the
first failure-mode file.
"""

from __future__ import annotations

import itertools
import time

import numpy as np

from morita.annular import verify_wha
from morita.catalog import MODULE_BUILDERS, fibonacci
from morita.cli import main
from morita.dualdata import assemble_dual
from morita.invertibility import (character_gram, check_invertible,
                                  check_matrix_orthogonality,
                                  check_mpo_injectivity)
from morita.repdecomp import decompose
from morita.skeletal import (verify_pentagons, verify_unit_blocks,
                             verify_unitarity)
from morita.vecg import classical_irreps, crosscheck_vecg, group_by_name

GROUPS = ("Z2", "Z3", "Z4", "Z2xZ2", "S3")


def _ok(n, text):
    print(f"ACCEPTANCE {n}: PASS — {text}")


def test_criterion_1_dual_of_vec_is_rep_g(duals):
    runtimes = {}
    for name in GROUPS:
        group = group_by_name(name)
        t0 = time.perf_counter()
        bim = assemble_dual(MODULE_BUILDERS[name]())
        runtimes[name] = time.perf_counter() - t0
        classic = classical_irreps(group)
        assert bim.right.rank == len(classic)
        assert np.allclose(sorted(bim.right.fp_dims),
                           sorted(r.dim for r in classic), atol=1e-9)
        report = crosscheck_vecg(group)
        assert report.char_residual < 1e-9
        assert runtimes[name] < 10.0
    assert np.allclose(sorted(duals["S3"].right.fp_dims), [1, 1, 2], atol=1e-9)
    _ok(1, f"duals of Vec match Rep(G) for {', '.join(GROUPS)}; "
           f"runtimes {max(runtimes.values()):.2f}s max")


def test_criterion_2_invertibility_verdicts(duals, failure_bimodules):
    v1 = check_invertible(failure_bimodules["failure-mode-1"])
    assert not v1.invertible and list(v1.failure_modes) == ["MissingIrreps"]
    assert np.max(np.abs(v1.gram - np.eye(1))) < 1e-9

    v2 = check_invertible(failure_bimodules["failure-mode-2"])
    assert not v2.invertible and list(v2.failure_modes) == ["DuplicateLabels"]
    assert np.max(np.abs(v2.gram - np.ones((2, 2)))) < 1e-9

    v3 = check_invertible(failure_bimodules["failure-mode-3"])
    assert not v3.invertible and list(v3.failure_modes) == ["ReducibleLabels"]
    assert abs(v3.gram[2, 2] - 2.0) < 1e-9
    assert np.max(np.abs(v3.gram - np.round(v3.gram.real))) < 1e-9

    v4 = check_invertible(duals["Z2"])
    assert v4.invertible and not v4.failure_modes
    _ok(2, "MissingIrreps / DuplicateLabels / ReducibleLabels(pi,pi)=2 / "
           "invertible, all grams integer-exact")


def test_criterion_3_character_gram(duals):
    worst = 0.0
    for name, bim in duals.items():
        gram = character_gram(bim)
        worst = max(worst, float(np.max(np.abs(gram - np.eye(bim.right.rank)))))
    assert worst < 1e-9
    _ok(3, f"Gram = identity on every assembled dual (worst {worst:.2e})")


def test_criterion_4_matrix_orthogonality(duals):
    worst = 0.0
    for name, bim in duals.items():
        report = check_matrix_orthogonality(bim)
        worst = max(worst, report.max_residual)
    assert worst < 1e-8
    # classical specialization: sum_g rho(g) conj(rho(g)) = |G|/dim deltas
    classical_worst = 0.0
    for name in GROUPS:
        group = group_by_name(name)
        irreps = classical_irreps(group)
        for c, cp in itertools.product(range(len(irreps)), repeat=2):
            rc, rcp = irreps[c], irreps[cp]
            acc = np.einsum("gab,gcd->abcd", rc.matrices, rcp.matrices.conj())
            expect = np.zeros_like(acc)
            if c == cp:
                for a, b in itertools.product(range(rc.dim), repeat=2):
                    expect[a, b, a, b] = group.order / rc.dim
            classical_worst = max(classical_worst,
                                  float(np.max(np.abs(acc - expect))))
    assert classical_worst < 1e-9
    _ok(4, f"orthogonality < 1e-8 on duals (worst {worst:.2e}); classical "
           f"specialization < 1e-9 (worst {classical_worst:.2e})")


def test_criterion_5_mpo_identity_on_duals(duals):
    worst = 0.0
    for name, bim in duals.items():
        report = check_mpo_injectivity(bim)
        worst = max(worst, report.mpo_residual)
        assert report.agreement
    assert worst < 1e-9
    _ok(5, f"injectivity identity < 1e-9 on all assembled duals "
           f"(worst {worst:.2e}); verdicts agree with criterion 4 there")


def test_criterion_5_agreement_with_criterion_4(duals, failure_bimodules):
    """Criterion 5's final clause, asserted exactly as specified.

    The clause requires the injectivity identity's pass/fail to agree with
    the bare orthogonality sum on every bundled example including all three
    failure modes. On the first failure mode the two checks provably differ:
    the identity's two sides are normalized by the two categories' total
    dimensions, so it detects missing irreducibles (residual exactly 1),
    while orthogonality restricted to a subcategory of the dual still holds
    (residual ~ 1e-16). The equivalence proved in the source holds only
    together with the dimension condition. See the decisions ledger.
    """
    for bim in duals.values():
        assert check_mpo_injectivity(bim).agreement
    for name, bim in failure_bimodules.items():
        report = check_mpo_injectivity(bim)
        assert report.agreement, (
            f"{name}: injectivity identity residual {report.mpo_residual:.3e} "
            f"vs orthogonality residual {report.schur_residual:.3e}")
    _ok(5, "agreement holds on every bundled example")


def test_criterion_6_wha_axioms(algebras):
    for name in ("Z2", "Z2-reg", "S3", "Fib"):
        alg = algebras[name]
        report = verify_wha(alg, tolerance=1e-9)
        assert report.passed(1e-9), (name, report.first_violation)
        lam = alg.Lambda
        assert (alg.multiply(lam, lam) - lam).norm() < 1e-10
        assert (alg.antipode(lam) - lam).norm() < 1e-10
        for v in decompose(alg):
            expect = 1.0 if v.id == 0 else 0.0
            assert abs(v.rho(lam).trace() - expect) < 1e-10
    _ok(6, "all weak-Hopf axioms < 1e-9 on the four bundled algebras; Haar "
           "properties within 1e-10")


def test_criterion_7_dimension_counting(algebras, duals):
    fib_alg = algebras["Fib"]
    assert fib_alg.dim == 13
    dims = sorted(v.dim for v in decompose(fib_alg))
    assert dims == [2, 3]
    bim = duals["Fib"]
    assert np.array_equal(bim.right.fusion, fibonacci().fusion)
    d_tau = bim.right.fp_dims[1]
    assert abs(d_tau**2 - d_tau - 1.0) < 1e-8

    z2reg = algebras["Z2-reg"]
    assert z2reg.dim == 8
    assert sorted(v.dim for v in decompose(z2reg)) == [2, 2]
    _ok(7, "dim 13 = 2^2 + 3^2 with Fibonacci dual fusion; dim 8 = 2^2 + 2^2")


def test_criterion_8_output_coherence(duals):
    worst = 0.0
    for name, bim in duals.items():
        pent = verify_pentagons(bim)
        unit = verify_unitarity(bim)
        gauge = max(verify_unit_blocks(bim).values())
        worst = max(worst, pent.max_residual, unit.max_residual, gauge)
        assert len(pent.residuals) == 6  # all strand words checked
    assert worst < 1e-9
    _ok(8, f"every assembled dual passes validation (worst residual {worst:.2e})")


def test_criterion_9_determinism(tmp_path):
    mod = tmp_path / "mod.json"
    assert main(["gen-vecg", "--group", "S3", "-o", str(mod)]) == 0
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["compute-dual", str(mod), "-o", str(out1), "--seed", "1"]) == 0
    assert main(["compute-dual", str(mod), "-o", str(out2), "--seed", "1"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    _ok(9, "identical seeds give byte-identical output files")
