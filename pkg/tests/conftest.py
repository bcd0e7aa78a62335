import os
import textwrap

import numpy
import pytest
from hypothesis import settings

from ipsuncert.fleet import FleetSpec
from ipsuncert.mixture import MixtureProfile, mixture_from_profiles
from ipsuncert.profile import ExpDecayProfile

SCENARIO_CONFIG = """
    [wind]
    amplitude = 31.86
    time_coefficient = 2.67

    [solar]
    amplitude = 41.90
    time_coefficient = 0.89

    [fleet]
    beta_w = 0.8
    beta_ips = 0.6
"""


@pytest.fixture
def wind():
    return ExpDecayProfile(31.86, 2.67)


@pytest.fixture
def solar():
    return ExpDecayProfile(41.90, 0.89)


@pytest.fixture
def scenario(wind, solar):
    return FleetSpec(wind, solar, 0.8, 0.6)


@pytest.fixture
def ips_mixture(wind, solar):
    return mixture_from_profiles([(0.8, wind), (0.2, solar)])


@pytest.fixture
def two_component():
    return MixtureProfile((0.8, 0.2), (4.0, 2.0), 10.0)


@pytest.fixture(scope='session')
def random_mixtures():
    rng = numpy.random.default_rng(20160719)
    corpus = []
    for _ in range(1000):
        count = int(rng.integers(2, 6))
        weights = rng.uniform(0.05, 1.0, count)
        corpus.append(MixtureProfile(weights / weights.sum(),
                                     rng.uniform(0.1, 48.0, count),
                                     rng.uniform(1.0, 60.0)))
    return corpus


@pytest.fixture
def write_text(tmp_path):

    def write_text(name, text):
        path = tmp_path / name
        path.write_text(textwrap.dedent(text).lstrip('\n'), encoding='utf-8')
        return str(path)

    return write_text


@pytest.fixture
def scenario_config(write_text):
    return write_text('scenario.ini', SCENARIO_CONFIG)


settings.register_profile('default', settings(max_examples=100,
                                              deadline=None))
settings.register_profile('ci', settings(max_examples=1000, deadline=None))
settings.register_profile('thorough', settings(max_examples=10000,
                                               deadline=None))
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'default'))
