from __future__ import annotations

import itertools

import numpy as np
import pytest

from morita.errors import MoritaError
from morita.vecg import (Cocycle, classical_irreps, clebsch_gordan,
                         crosscheck_vecg, cyclic_group, dihedral_group_4,
                         gen_vecg, group_by_name, klein_four_group,
                         quaternion_group, rep_fusion, symmetric_group,
                         symplectic_cocycle)


class TestGroups:
    def test_builtin_tables_are_groups(self):
        for name in ("Z2", "Z3", "Z7", "Z2xZ2", "S3", "S4", "D4", "Q8"):
            group = group_by_name(name)
            assert group.order == {"Z2": 2, "Z3": 3, "Z7": 7, "Z2xZ2": 4,
                                   "S3": 6, "S4": 24, "D4": 8, "Q8": 8}[name]

    def test_inverses(self):
        q8 = quaternion_group()
        for g in range(8):
            assert q8.mul(g, q8.inv(g)) == 0

    def test_d4_is_nonabelian(self):
        d4 = dihedral_group_4()
        assert any(d4.mul(g, h) != d4.mul(h, g)
                   for g, h in itertools.product(range(8), repeat=2))

    def test_bad_table_rejected(self):
        with pytest.raises(MoritaError):
            group_by_name("F17")
        from morita.vecg import FiniteGroup
        with pytest.raises(MoritaError):
            FiniteGroup(np.array([[0, 1], [1, 1]]))


class TestCocycles:
    def test_symplectic_is_valid(self):
        phi = symplectic_cocycle()
        assert abs(phi(1, 2) + 1.0) < 1e-12  # (0,1) with (1,0) picks up a sign

    def test_non_cocycle_rejected(self):
        group = klein_four_group()
        vals = np.ones((4, 4), dtype=complex)
        vals[1, 1] = -1.0  # breaks the cocycle identity, stays normalized
        with pytest.raises(MoritaError):
            Cocycle(group, vals)

    def test_unnormalized_rejected(self):
        group = cyclic_group(2)
        vals = np.ones((2, 2), dtype=complex)
        vals[0, 1] = -1.0
        with pytest.raises(MoritaError):
            Cocycle(group, vals)


class TestGenVecg:
    def test_fusion_is_group_law(self):
        group = symmetric_group(3)
        mod = gen_vecg(group)
        for g, h in itertools.product(range(6), repeat=2):
            assert mod.base.fusion[g, h, group.mul(g, h)] == 1
            assert mod.base.fusion[g, h].sum() == 1

    def test_f1_carries_the_cocycle(self):
        phi = symplectic_cocycle()
        mod = gen_vecg(klein_four_group(), phi)
        for g, h in itertools.product(range(4), repeat=2):
            gh = int(np.nonzero(mod.base.fusion[g, h])[0][0])
            assert mod.f1.entry((g, h, 0, 0, 0, gh, 0, 0, 0, 0)) == phi(g, h)

    def test_module_dimension(self):
        assert abs(gen_vecg(quaternion_group()).m_dims[0] - np.sqrt(8)) < 1e-12


class TestClassicalIrreps:
    def test_z2_characters(self):
        irreps = classical_irreps(cyclic_group(2))
        table = np.array([r.char for r in irreps])
        assert np.allclose(table, [[1, 1], [1, -1]], atol=1e-10)

    def test_s3_dimensions(self):
        irreps = classical_irreps(symmetric_group(3))
        assert sorted(r.dim for r in irreps) == [1, 1, 2]

    def test_z4_fourier_characters(self):
        irreps = classical_irreps(cyclic_group(4))
        table = np.array([r.char for r in irreps])
        expect = np.array([[1j ** (k * g) for g in range(4)] for k in range(4)])
        # match up to permutation of the rows
        used = set()
        for row in table:
            hits = [k for k in range(4)
                    if k not in used and np.max(np.abs(expect[k] - row)) < 1e-9]
            assert hits
            used.add(hits[0])

    def test_character_orthogonality(self):
        for group in (symmetric_group(3), quaternion_group(), dihedral_group_4()):
            irreps = classical_irreps(group)
            table = np.array([r.char for r in irreps])
            gram = table @ table.conj().T / group.order
            assert np.max(np.abs(gram - np.eye(len(irreps)))) < 1e-9

    def test_s3_fusion(self):
        group = symmetric_group(3)
        fusion = rep_fusion(classical_irreps(group), group)
        pi = [k for k, r in enumerate(classical_irreps(group)) if r.dim == 2][0]
        assert fusion[pi, pi].sum() == 3  # 1 + sign + standard

    def test_clebsch_gordan_intertwines(self):
        group = symmetric_group(3)
        irreps = classical_irreps(group)
        pi = [k for k, r in enumerate(irreps) if r.dim == 2][0]
        for c in range(3):
            for cg in clebsch_gordan(group, irreps, pi, pi, c):
                assert np.max(np.abs(cg.conj().T @ cg - np.eye(irreps[c].dim))) < 1e-9
                for g in range(6):
                    lhs = np.kron(irreps[pi].matrices[g], irreps[pi].matrices[g]) @ cg
                    assert np.max(np.abs(lhs - cg @ irreps[c].matrices[g])) < 1e-9


class TestCrossCheck:
    def test_small_groups(self):
        for group in (cyclic_group(2), cyclic_group(3), symmetric_group(3)):
            report = crosscheck_vecg(group)
            assert report.passed(1e-9)

    def test_nontrivial_cocycle_rejected(self):
        with pytest.raises(MoritaError):
            crosscheck_vecg(klein_four_group(), symplectic_cocycle())


def test_twisted_pipeline_total_dimension(duals):
    bim = duals["Z2xZ2-twisted"]
    assert abs(bim.right.fpdim - 4.0) < 1e-9
