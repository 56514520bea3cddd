import itertools
import math
from dataclasses import replace

import numpy as np
import pytest

from hnc.core.configs import RunConfig
from hnc.core.errors import ChannelError, InvalidParameterError
from hnc.core.hybrid import BOUND_NOTE, Channel, cascade_capacity, full_report
from hnc.core.molecular_channel import LogMode, MolecularChannelParams, capacity_molecular
from hnc.core.neural_channel import NeuralChannelParams, capacity_neural_bits
from hnc.core.thz_channel import capacity as capacity_thz


def test_min_composition():
    r = cascade_capacity(3.0, 2.0, 5.0)
    assert r.cascade_c == 2.0
    assert r.bottleneck is Channel.MOLECULAR
    assert r.bound_note == BOUND_NOTE


@pytest.mark.parametrize("triple,expected", [
    ((5.0, 5.0, 5.0), Channel.MOLECULAR),
    ((5.0, 6.0, 5.0), Channel.NEURAL),
    ((5.0, 5.0, 6.0), Channel.MOLECULAR),
    ((4.0, 6.0, 4.0), Channel.NEURAL),
    ((1.0, 6.0, 7.0), Channel.THZ),
])
def test_tie_break_order(triple, expected):
    assert cascade_capacity(*triple).bottleneck is expected


def test_random_triples_properties():
    rng = np.random.default_rng(7)
    triples = rng.uniform(0.0, 1e6, size=(100_000, 3))
    bumps = rng.uniform(0.0, 1e5, size=100_000)
    which = rng.integers(0, 3, size=100_000)

    for (c1, c2, c3), bump, k in zip(triples.tolist(), bumps.tolist(), which.tolist()):
        r = cascade_capacity(c1, c2, c3)
        assert r.cascade_c == min(c1, c2, c3)
        assert r.capacities()[r.bottleneck] == r.cascade_c

        raised = [c1, c2, c3]
        raised[k] += bump
        assert cascade_capacity(*raised).cascade_c >= r.cascade_c


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf, None, "x"])
def test_non_finite_rejected(bad):
    with pytest.raises(InvalidParameterError):
        cascade_capacity(1.0, bad, 2.0)


def test_negative_capacity_flagged(caplog):
    with caplog.at_level("WARNING"):
        r = cascade_capacity(10.0, -3.0, 4.0)
    assert r.cascade_c == -3.0
    assert r.negative_capacity_flags == {"Thz": False, "Molecular": True, "Neural": False}
    assert any("negativa" in rec.message for rec in caplog.records)


def test_report_row_columns():
    row = cascade_capacity(1.0, 2.0, 3.0).as_row()
    assert list(row) == ["c1_bps", "c2_bps", "c3_bps", "cascade_bps", "bottleneck"]
    assert row["bottleneck"] == "Thz"


def test_default_parameters_bottleneck():
    """
    Nos defaults a cascata é limitada pelo canal neural (C3 ~ 3.6 bits/s),
    e não pelo molecular (C2 ~ 1e6 bits/s). Resultado registrado aqui.
    """
    cfg = RunConfig()
    r = full_report(cfg.thz_params(), cfg.molecular_params(), cfg.neural_params())

    assert all(math.isfinite(v) for v in r.capacities().values())
    assert r.bottleneck is Channel.NEURAL
    assert r.c3_neural == pytest.approx(2.5 / math.log(2), rel=1e-12)
    assert r.c2_molecular > 1e5
    assert r.c1_thz > r.c2_molecular


def test_channel_error_names_channel():
    cfg = RunConfig()
    bad_mol = MolecularChannelParams(
        bandwidth_W=1.0, mean_power_P=1e-12, temperature_T=300.0, diffusion_D=1e-9,
        distance_d2=1e-4, detector_radius_Rd=1e-4,
    )
    with pytest.raises(ChannelError) as exc:
        full_report(cfg.thz_params(), bad_mol, cfg.neural_params())
    assert exc.value.channel == "Molecular"


def test_permutation_moves_only_the_bottleneck_label():
    channels = (Channel.THZ, Channel.MOLECULAR, Channel.NEURAL)
    rng = np.random.default_rng(11)
    for triple in rng.uniform(0.0, 1e6, size=(200, 3)).tolist():
        base = cascade_capacity(*triple)
        for perm in itertools.permutations(range(3)):
            values = [triple[i] for i in perm]
            r = cascade_capacity(*values)
            assert r.cascade_c == base.cascade_c
            assert r.bottleneck is channels[values.index(base.cascade_c)]


@pytest.mark.parametrize("mode", [LogMode.VERBATIM, LogMode.NATS_CONSISTENT])
def test_report_fields_equal_direct_calls(mode):
    cfg = RunConfig()
    for thz in (cfg.thz_params(), cfg.thz_simplified()):
        mol, neu = cfg.fig9_params(), cfg.neural_params()
        r = full_report(thz, mol, neu, mode)
        assert r.c1_thz == capacity_thz(thz)
        assert r.c2_molecular == capacity_molecular(mol, mode)
        assert r.c3_neural == capacity_neural_bits(neu)


def _neural_at(target_bps, delta=1e-3, sigma=5e-6):
    """Taxa a com C3 = target (bits/s): a²σ = K(1 + aδ), K = target·ln 2."""
    k = target_bps * math.log(2)
    a = (k * delta + math.sqrt((k * delta) ** 2 + 4 * sigma * k)) / (2 * sigma)
    return NeuralChannelParams(input_rate_a=a, refractory_delta=delta, latency_sigma=sigma)


def test_raising_power_flips_bottleneck_to_neural():
    cfg = RunConfig()
    thz, mol = cfg.thz_params(), cfg.fig9_params()
    c2 = capacity_molecular(mol)
    neu = _neural_at(2 * abs(c2) + 1000.0)

    labels = []
    for k in range(10):
        scaled = replace(mol, mean_power_P=mol.mean_power_P * 2 ** k)
        labels.append(full_report(thz, scaled, neu).bottleneck)

    assert labels[0] is Channel.MOLECULAR
    assert labels[-1] is Channel.NEURAL
    flip = labels.index(Channel.NEURAL)
    assert set(labels[flip:]) == {Channel.NEURAL}
    assert set(labels[:flip]) == {Channel.MOLECULAR}
