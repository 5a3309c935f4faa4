"""Bundled example data: small categories, modules, and bimodule test files.

Everything here is exact reference data used by the test corpus and CLI
examples: the pointed categories from ``vecg``, the Fibonacci category, the
regular module of any category, and the three non-invertible bimodules built
from graded lines over Z2.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .skeletal import BimoduleData, ModuleData, SkeletalCategory
from .vecg import (cyclic_group, gen_vecg, group_fusion, klein_four_group,
                   symmetric_group, symplectic_cocycle)


def fibonacci() -> SkeletalCategory:
    """The Fibonacci category: labels (1, tau), tau x tau = 1 + tau."""
    fusion = np.zeros((2, 2, 2), dtype=int)
    fusion[0, 0, 0] = fusion[0, 1, 1] = fusion[1, 0, 1] = 1
    fusion[1, 1, 0] = fusion[1, 1, 1] = 1
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    entries = {}
    for a, b, c, d in itertools.product(range(2), repeat=4):
        for e in range(2):
            if not (fusion[a, b, e] and fusion[e, c, d]):
                continue
            for f in range(2):
                if not (fusion[b, c, f] and fusion[a, f, d]):
                    continue
                if (a, b, c, d) == (1, 1, 1, 1):
                    block = {(0, 0): 1.0 / phi, (0, 1): 1.0 / math.sqrt(phi),
                             (1, 0): 1.0 / math.sqrt(phi), (1, 1): -1.0 / phi}
                    val = block[(e, f)]
                else:
                    val = 1.0
                entries[(a, b, c, d, 0, e, 0, 0, f, 0)] = complex(val)
    return SkeletalCategory(fusion, entries, name="Fib")


def regular_module(cat: SkeletalCategory) -> ModuleData:
    """A fusion category acting on itself; F1 coincides with F0."""
    return ModuleData(cat, cat.fusion, dict(cat.f0.entries), name=f"{cat.name}-reg")


def vec_z2_module() -> ModuleData:
    return gen_vecg(cyclic_group(2))


def trivial_category() -> SkeletalCategory:
    fusion = np.ones((1, 1, 1), dtype=int)
    return SkeletalCategory(fusion, {(0, 0, 0, 0, 0, 0, 0, 0, 0, 0): 1.0 + 0.0j},
                            name="Vec")


def _all_plus_one_bimodule(left_mod: ModuleData, right_cat: SkeletalCategory,
                           right_act: np.ndarray) -> BimoduleData:
    """Bimodule with every allowed F2/F3 entry set to +1 (multiplicity-free)."""
    mrank = left_mod.mrank
    left_act = left_mod.act
    f2 = {}
    for a in range(left_mod.base.rank):
        for b, e, d, f in itertools.product(range(mrank), repeat=4):
            for c in range(right_cat.rank):
                if left_act[a, b, e] and right_act[e, c, d] and \
                        right_act[b, c, f] and left_act[a, f, d]:
                    f2[(a, b, c, d, 0, e, 0, 0, f, 0)] = 1.0 + 0.0j
    f3 = {}
    for a, e, d in itertools.product(range(mrank), repeat=3):
        for b, c, f in itertools.product(range(right_cat.rank), repeat=3):
            if right_act[a, b, e] and right_act[e, c, d] and \
                    right_cat.fusion[b, c, f] and right_act[a, f, d]:
                f3[(a, b, c, d, 0, e, 0, 0, f, 0)] = 1.0 + 0.0j
    return BimoduleData(left_mod.base, right_cat, left_act, right_act,
                        dict(left_mod.f1.entries), f2, f3)


def failure_mode_1() -> BimoduleData:
    """Graded lines over Z2 acting on Vec, with the trivial right category.

    The character Gram matrix is the 1x1 identity but the two sides have
    different total dimension: irreducibles are missing.
    """
    mod = vec_z2_module()
    right = trivial_category()
    right_act = np.ones((1, 1, 1), dtype=int)
    return _all_plus_one_bimodule(mod, right, right_act)


def failure_mode_2() -> BimoduleData:
    """Both objects of the right category label the trivial representation.

    All bimodule associators are +1, so the Gram matrix is the all-ones
    2x2 matrix: two labels are duplicates.
    """
    mod = vec_z2_module()
    group = cyclic_group(2)
    f4 = {}
    for a, b, c in itertools.product(range(2), repeat=3):
        d = (a + b + c) % 2
        f4[(a, b, c, d, 0, (a + b) % 2, 0, 0, (b + c) % 2, 0)] = 1.0 + 0.0j
    right = SkeletalCategory(group_fusion(group), f4, name="Vec[Z2]")
    right_act = np.ones((1, 2, 1), dtype=int)
    return _all_plus_one_bimodule(mod, right, right_act)


def failure_mode_3(seed: int | None = None) -> BimoduleData:
    """Restrict the invertible (Vec S3, Vec) bimodule to the subgroup Z2.

    The right category stays Rep(S3); its two-dimensional object restricts
    to a reducible representation of Z2, so its Gram diagonal is 2.
    """
    from .dualdata import assemble_dual
    from .vecg import DEFAULT_SEED

    full = assemble_dual(gen_vecg(symmetric_group(3)),
                         seed=DEFAULT_SEED if seed is None else seed)
    # element 1 of S3 in permutation order is the transposition (0)(1 2)
    embed = {0: 0, 1: 1}
    z2 = gen_vecg(cyclic_group(2))
    f2 = {}
    for key, val in full.f2.entries.items():
        for gnew, gold in embed.items():
            if key[0] == gold:
                f2[(gnew,) + key[1:]] = val
    return BimoduleData(z2.base, full.right, z2.act, full.right_act,
                        dict(z2.f1.entries), f2, dict(full.f3.entries))


def rep_z2_bimodule(seed: int | None = None) -> BimoduleData:
    """The invertible bimodule: graded lines over Z2, Vec, Rep(Z2)."""
    from .dualdata import assemble_dual
    from .vecg import DEFAULT_SEED

    return assemble_dual(vec_z2_module(), seed=DEFAULT_SEED if seed is None else seed)


MODULE_BUILDERS = {
    "Z2": lambda: gen_vecg(cyclic_group(2)),
    "Z3": lambda: gen_vecg(cyclic_group(3)),
    "Z4": lambda: gen_vecg(cyclic_group(4)),
    "Z2xZ2": lambda: gen_vecg(klein_four_group()),
    "Z2xZ2-twisted": lambda: gen_vecg(klein_four_group(), symplectic_cocycle()),
    "S3": lambda: gen_vecg(symmetric_group(3)),
    "Fib": lambda: regular_module(fibonacci()),
    "Z2-reg": lambda: regular_module(gen_vecg(cyclic_group(2)).base),
}

BIMODULE_BUILDERS = {
    "failure-mode-1": failure_mode_1,
    "failure-mode-2": failure_mode_2,
    "failure-mode-3": failure_mode_3,
}


def bundled_path(name: str):
    """Path of a bundled JSON data file inside the installed package."""
    from importlib import resources

    fn = f"{name}.json"
    ref = resources.files("morita").joinpath("data", fn)
    if not ref.is_file():
        raise FileNotFoundError(f"no bundled data file {fn!r}")
    return ref


def write_bundled(outdir) -> list:
    """Regenerate the bundled corpus (module files plus failure modes)."""
    from pathlib import Path

    from . import io

    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, builder in MODULE_BUILDERS.items():
        path = out / f"{name}.json"
        io.save(builder(), path)
        written.append(path)
    for name, builder in BIMODULE_BUILDERS.items():
        path = out / f"{name}.json"
        io.save(builder(), path)
        written.append(path)
    return written
