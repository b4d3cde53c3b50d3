import numpy as np
import pytest

from charlab import lie_backend as lie
from charlab.abelian_rh import HyperellipticCurve, periods
from charlab.rep_variety import Representation, random_flat_representation
from charlab.simplicial_oracle import build_complex
from charlab.twisted_cohomology import cohomology

SL2 = lie.group_spec(lie.SL, 2)
GL2 = lie.group_spec(lie.GL, 2)
TORUS = lie.group_spec(lie.TORUS)


@pytest.fixture(scope="session")
def sl2_reps():
    """Five refined irreducible SL(2) points at genus 2."""
    return [random_flat_representation(SL2, 2, seed=s, scale=0.5)
            for s in range(1, 6)]


@pytest.fixture(scope="session")
def sl2_rep(sl2_reps):
    return sl2_reps[0]


@pytest.fixture(scope="session")
def sl2_spaces(sl2_rep):
    return cohomology(sl2_rep)


@pytest.fixture(scope="session")
def torus_rep():
    return random_flat_representation(TORUS, 2, seed=1)


@pytest.fixture(scope="session")
def torus_spaces(torus_rep):
    return cohomology(torus_rep)


@pytest.fixture(scope="session")
def trivial_sl2():
    eye = np.eye(2, dtype=complex)
    return Representation(SL2, 2, (eye, eye, eye, eye))


@pytest.fixture(scope="session")
def complex_g2():
    return build_complex(2, refinement=0)


@pytest.fixture(scope="session")
def complex_g2_r1():
    return build_complex(2, refinement=1)


@pytest.fixture(scope="session")
def sample_curve():
    return HyperellipticCurve((-5.0, -3.0, -1.0, 1.0, 3.0, 5.0))


@pytest.fixture(scope="session")
def sample_periods(sample_curve):
    return periods(sample_curve, 128)
