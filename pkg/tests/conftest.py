import numpy as np
import pytest

from drivemotifs import DiscoveryConfig, ManeuverTemplate, SynthSpec, synth_trip


@pytest.fixture(scope="session")
def paper_cfg():
    return DiscoveryConfig(window_size=20, paa_size=2, alphabet_size=5, radius_r=0.1)


@pytest.fixture(scope="session")
def clean_dip_trip():
    """Noiseless baseline with three identical planted brake dips.

    Sized so the baseline z-score sits well inside a breakpoint interval;
    small padding then cannot flip any symbol.
    """
    spec = SynthSpec(
        n_samples=2000,
        noise_sigma=0.0,
        min_gap=80,
        edge_margin=100,
        templates=tuple(
            ManeuverTemplate(kind="brake", amplitude=0.3, duration=20) for _ in range(3)
        ),
    )
    return synth_trip(spec, seed=3)


@pytest.fixture(scope="session")
def _warm_numba():
    from drivemotifs import dtw

    dtw(np.zeros(3), np.ones(3))
