"""Assembly of the dual-category skeletal data (F2, F3, F4) from tube irreps.

With graded orthonormal *-representations in hand, the bimodule associator is
read off from tube matrix elements, the right-module associator from matrix
elements of the embedding isometries, and the dual fusion associator from
overlaps of composed embeddings. The rescaling between the diagrammatic basis
and the orthonormal one is fixed (per dual label, up to the free phase which
we set to 1) so that every computed block is unitary.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .annular import AnnularAlgebra, build_algebra
from .errors import GradingMismatch, PipelineInconsistent
from .repdecomp import (DEFAULT_SEED, Intertwiner, Irrep, decompose, hom_dim,
                        intertwiners, tensor_module)
from .skeletal import (BimoduleData, FContext, FSymbols, ModuleData,
                       SkeletalCategory, verify_pentagons, verify_unit_blocks,
                       verify_unitarity)


def right_action_tensor(irreps: list[Irrep]) -> np.ndarray:
    """Sector dimensions of the irreps as the right-action multiplicities."""
    rk = irreps[0].alg.rk
    out = np.zeros((rk, len(irreps), rk), dtype=int)
    for v in irreps:
        for m1 in range(rk):
            for m2 in range(rk):
                out[m1, v.id, m2] = v.sector_dim(m1, m2)
    return out


def compute_f2(alg: AnnularAlgebra, irreps: list[Irrep],
               right_act: np.ndarray) -> dict:
    """The bimodule associator, inverted from tube matrix elements.

    For each irrep the matrix element of a tube between graded basis vectors
    equals an inverse-F2 entry times sqrt(d_x m_bot / m_out) and the ratio of
    basis rescalings ((m_out m_top)/(m_bot m_in))^(1/4).
    """
    m = alg.m
    d = alg.d
    fi2: dict = {}
    for v in irreps:
        for i, t in enumerate(alg.basis):
            src = v.sector_offsets.get((t.a, t.b))
            dst = v.sector_offsets.get((t.c, t.d))
            if src is None or dst is None:
                continue
            weight = math.sqrt(m[t.c] / (d[t.x] * m[t.a])) \
                * ((m[t.a] * m[t.b]) / (m[t.c] * m[t.d])) ** 0.25
            block = v.matrices[i][dst[0]:dst[0] + dst[1], src[0]:src[0] + src[1]]
            for be in range(dst[1]):
                for mu in range(src[1]):
                    val = weight * block[be, mu]
                    if abs(val) > 1e-14:
                        key = (t.x, t.a, v.id, t.d, t.al, t.c, be, mu, t.b, t.be)
                        fi2[key] = fi2.get(key, 0.0) + val
    ctx = FContext(fusion_c=alg.cat.fusion, left_act=alg.module.act,
                   right_act=right_act)
    inv = FSymbols("f2", ctx, fi2)
    for key in inv.upper_keys():
        rows, cols, _ = inv.block(*key)
        if len(rows) != len(cols):
            raise GradingMismatch(
                f"F2 block {key} is {len(rows)}x{len(cols)}; a sector is missing")
    return _invert_family(inv)


def _invert_family(inv: FSymbols) -> dict:
    """Turn a family of inverse-F blocks into the direct F entries."""
    out = {}
    for key in inv.upper_keys():
        rows, cols, _ = inv.block(*key)
        if not rows:
            continue
        mat = inv.inv_block(*key)
        for i, r in enumerate(rows):
            for j, c in enumerate(cols):
                if abs(mat[i, j]) > 1e-14:
                    out[key + r + c] = complex(mat[i, j])
    return out


def compute_f3(tws: dict[tuple, list[Intertwiner]], irreps: list[Irrep],
               right_act: np.ndarray, fusion_d: np.ndarray) -> dict:
    """The right-module associator from matrix elements of the embeddings.

    The inverse-F3 entry is the overlap of a stacked pair of graded basis
    vectors with the embedded image of a single one.
    """
    fi3: dict = {}
    for (b, c, f), maps in tws.items():
        vb, vc, vf = irreps[b], irreps[c], irreps[f]
        for tw in maps:
            w = tw.matrix
            for (a, e), (o_ab, n_ab) in vb.sector_offsets.items():
                for (e2, dd), (o_cd, n_cd) in vc.sector_offsets.items():
                    if e2 != e:
                        continue
                    tgt = vf.sector_offsets.get((a, dd))
                    if tgt is None:
                        continue
                    for al in range(n_ab):
                        for be in range(n_cd):
                            flat = (o_ab + al) * vc.dim + (o_cd + be)
                            for nu in range(tgt[1]):
                                val = w[flat, tgt[0] + nu]
                                if abs(val) > 1e-14:
                                    key = (a, b, c, dd, al, e, be, tw.alpha, f, nu)
                                    fi3[key] = complex(val)
    ctx = FContext(right_act=right_act, fusion_d=fusion_d)
    return _invert_family(FSymbols("f3", ctx, fi3))


def compute_f4(tws: dict[tuple, list[Intertwiner]], irreps: list[Irrep],
               fusion_d: np.ndarray) -> dict:
    """The dual-category F-symbols as overlaps of recoupled embeddings.

    Each block is the pairing of the two orthonormal families of composed
    isometries V_d -> V_a x V_b x V_c, normalized by dim V_d; a polar
    decomposition snaps away floating-point drift when the raw block is
    within 1e-6 of unitary and fails loudly otherwise.
    """
    r = len(irreps)
    entries: dict = {}
    for a, b, c in itertools.product(range(r), repeat=3):
        va, vb, vc = irreps[a], irreps[b], irreps[c]
        for d in range(r):
            vd = irreps[d]
            rows = []
            lmaps = []
            for e in range(r):
                for al in range(fusion_d[a, b, e]):
                    for be in range(fusion_d[e, c, d]):
                        wab = tws[a, b, e][al].matrix
                        wec = tws[e, c, d][be].matrix
                        lmaps.append(np.kron(wab, np.eye(vc.dim)) @ wec)
                        rows.append((al, e, be))
            cols = []
            rmaps = []
            for f in range(r):
                for mu in range(fusion_d[b, c, f]):
                    for nu in range(fusion_d[a, f, d]):
                        wbc = tws[b, c, f][mu].matrix
                        waf = tws[a, f, d][nu].matrix
                        rmaps.append(np.kron(np.eye(va.dim), wbc) @ waf)
                        cols.append((mu, f, nu))
            if not rows:
                continue
            if len(rows) != len(cols):
                raise PipelineInconsistent(
                    f"F4 block ({a},{b},{c},{d}) is {len(rows)}x{len(cols)}")
            block = np.zeros((len(rows), len(cols)), dtype=complex)
            for i, lm in enumerate(lmaps):
                for j, rm in enumerate(rmaps):
                    block[i, j] = np.trace(rm.conj().T @ lm) / vd.dim
            resid = float(np.max(np.abs(block @ block.conj().T - np.eye(len(rows)))))
            if resid > 1e-6:
                raise PipelineInconsistent(
                    f"raw F4 block ({a},{b},{c},{d}) is not unitary "
                    f"(residual {resid:.2e})")
            u, _, vh = np.linalg.svd(block)
            block = u @ vh
            for i, row in enumerate(rows):
                for j, col in enumerate(cols):
                    if abs(block[i, j]) > 1e-14:
                        entries[(a, b, c, d) + row + col] = complex(block[i, j])
    return entries


def dual_fusion(irreps: list[Irrep]) -> np.ndarray:
    """Fusion multiplicities of the dual category from Hom-space dimensions."""
    r = len(irreps)
    fusion = np.zeros((r, r, r), dtype=int)
    for a, b in itertools.product(range(r), repeat=2):
        prod = tensor_module(irreps[a], irreps[b])
        for c in range(r):
            fusion[a, b, c] = hom_dim(irreps[c], prod)
    return fusion


def assemble_dual(module: ModuleData, seed: int = DEFAULT_SEED,
                  tolerance: float = 1e-9) -> BimoduleData:
    """Run the full pipeline: irreps, then F2, F3, F4, then self-validation.

    The output bimodule is checked against every pentagon family, per-block
    unitarity, the normalized unit gauge, and the matching of total
    dimensions; any failure raises PipelineInconsistent since the data is
    invertible by construction.
    """
    pent = verify_pentagons(module)
    unit = verify_unitarity(module)
    if not pent.passed(tolerance) or not unit.passed(tolerance):
        raise PipelineInconsistent(
            f"input module data is not coherent: pentagon {pent.residuals}, "
            f"unitarity {unit.residuals}")
    alg = build_algebra(module)
    irreps = decompose(alg, seed)
    right_act = right_action_tensor(irreps)
    fusion_d = dual_fusion(irreps)
    for v in irreps:
        if fusion_d[v.id, v.dual, 0] != 1:
            raise PipelineInconsistent("dual assignment disagrees with fusion")
    f2 = compute_f2(alg, irreps, right_act)
    tws = {}
    r = len(irreps)
    for a, b, c in itertools.product(range(r), repeat=3):
        if fusion_d[a, b, c]:
            maps = intertwiners(irreps[a], irreps[b], irreps[c])
            if len(maps) != fusion_d[a, b, c]:
                raise PipelineInconsistent(
                    f"intertwiner count mismatch at ({a},{b},{c})")
            tws[a, b, c] = maps
    f3 = compute_f3(tws, irreps, right_act, fusion_d)
    f4 = compute_f4(tws, irreps, fusion_d)
    right = SkeletalCategory(fusion_d, f4, tolerance=tolerance,
                             name=f"dual({module.base.name})")
    bim = BimoduleData(module.base, right, module.act, right_act,
                       dict(module.f1.entries), f2, f3, tolerance=tolerance)
    if abs(right.fpdim - module.base.fpdim) > 1e-8 * max(1.0, module.base.fpdim):
        raise PipelineInconsistent(
            f"dual total dimension {right.fpdim} != {module.base.fpdim}")
    out_pent = verify_pentagons(bim)
    out_unit = verify_unitarity(bim)
    out_gauge = max(verify_unit_blocks(bim).values())
    if not out_pent.passed(tolerance) or not out_unit.passed(tolerance) \
            or out_gauge > tolerance:
        raise PipelineInconsistent(
            f"assembled data failed validation: pentagons {out_pent.residuals}, "
            f"unitarity {out_unit.residuals}, unit gauge {out_gauge:.2e}")
    bim.dual_irreps = irreps
    return bim
