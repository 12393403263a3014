import math

import pytest

import srsbs


def test_gold_codes():
    codes = srsbs.gold_codes()
    assert len(codes) == 33
    for i, a in enumerate(codes):
        for b in codes[i + 1:]:
            for lag in range(31):
                assert sum(a[n] * b[(n + lag) % 31] for n in range(31)) in (-9, -1, 7)


def test_zc_and_magnitude():
    base = srsbs.zc_base(25)
    assert len(base) == 139
    assert base[0] == pytest.approx(1.0)
    srs = srsbs.srs_symbol()
    assert len(srs) == 144
    assert srs[139:] == base[:5]
    assert srsbs.average_magnitude(srs) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(srsbs.ConfigError):
        srsbs.zc_base(25, 140)


def test_repetition_and_pearson():
    code = srsbs.gold_codes()[7]
    msg = srsbs.encode_repetition(code, 7)
    assert len(msg) == 217
    assert srsbs.decode_repetition(msg, 7) == code
    assert srsbs.pearson(msg, [3.0 * x + 1.0 for x in msg]) == pytest.approx(1.0, abs=1e-12)
    assert srsbs.pearson(msg, [0.5] * 217) == 0.0


def test_detector_streaming():
    code = srsbs.gold_codes()[4]
    msg = srsbs.encode_repetition(code, 7)
    det = srsbs.Detector()
    events = []
    for k in range(3 * 217):
        ev = det.process(0.3 * (1.05 if msg[k % 217] > 0 else 1.0))
        if ev is not None:
            events.append(ev)
    assert events and all(e.code_id == 4 for e in events)
    trace = [0.3 * (1.05 if msg[k % 217] > 0 else 1.0) for k in range(3 * 217)]
    assert srsbs.detect_trace(trace, raw=True) == events


def test_experiments():
    cfg = srsbs.ExperimentConfig.from_preset("noiseless")
    cfg.R = 10
    m = srsbs.run_experiment(cfg)
    assert m.detection_probability == 1.0
    assert m.n_srs == 2170
    assert m.simulated_duration_ms == 21700
    phases = srsbs.run_phases(cfg)
    assert phases.off.false_alarm_probability == 0.0
    assert phases.on.seed == srsbs.derive_seed(cfg.seed, 1)
    ci = m.detection_ci
    assert ci["upper"] == 1.0 and ci["lower"] == pytest.approx(0.025 ** 0.1)


def test_sweep_and_config():
    cfg = srsbs.ExperimentConfig.from_preset("noiseless")
    cfg.R = 2
    rows = srsbs.sweep(cfg, "theta", [0.6, 0.2], threads=2)
    assert [v for v, _ in rows] == [0.6, 0.2]
    assert srsbs.sweep(cfg, "theta", []) == []
    with pytest.raises(srsbs.ConfigError):
        srsbs.sweep(cfg, "warp", [1.0])
    back = srsbs.ExperimentConfig.from_json(cfg.to_json())
    assert back.to_json() == cfg.to_json()
    cfg.filter.deviation_factor = math.inf
    assert srsbs.ExperimentConfig.from_json(cfg.to_json()).filter.deviation_factor == math.inf
    with pytest.raises(srsbs.IoError):
        srsbs.ExperimentConfig.load("/nonexistent/cfg.json")
    assert set(srsbs.preset_names()) == {"noiseless", "indoor_short", "indoor_long", "outdoor"}
