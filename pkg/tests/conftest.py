from __future__ import annotations

import pytest

from morita.annular import build_algebra
from morita.catalog import (MODULE_BUILDERS, failure_mode_1, failure_mode_2,
                            failure_mode_3)
from morita.dualdata import assemble_dual


@pytest.fixture(scope="session")
def modules():
    return {name: builder() for name, builder in MODULE_BUILDERS.items()}


@pytest.fixture(scope="session")
def algebras(modules):
    return {name: build_algebra(mod) for name, mod in modules.items()}


@pytest.fixture(scope="session")
def duals(modules):
    return {name: assemble_dual(mod) for name, mod in modules.items()}


@pytest.fixture(scope="session")
def failure_bimodules(duals):
    return {
        "failure-mode-1": failure_mode_1(),
        "failure-mode-2": failure_mode_2(),
        "failure-mode-3": failure_mode_3(),
    }
