import pytest

from _scen import raw, scenario, setup
from qvertex.scenario import SUITES, ConfigError, load_scenario, parse_scenario

BASE = {"family": {"kind": "twisted-affine", "lie": "abelian", "order": 2, "cyclotomic": 2, "cutoff": 4}}


def _bad(**over):
    data = {**BASE, **over}
    with pytest.raises(ConfigError) as err:
        parse_scenario(data)
    return err.value.field


def test_defaults():
    sc = parse_scenario(BASE)
    assert sc.checks == list(SUITES)
    assert sc.window["modes"] == 3 and sc.window["exponent"] == 8
    assert sc.closure["depth"] == 2


def test_zero_window_names_the_field():
    assert _bad(window=0) == "window"
    assert _bad(window={"modes": 0}) == "window.modes"


def test_scalar_window_is_mode_box():
    assert parse_scenario({**BASE, "window": 2}).window["modes"] == 2


def test_unknown_suite_and_kind():
    assert _bad(checks=["jacobi", "nope"]) == "checks"
    assert _bad(family={"kind": "lattice", "cutoff": 3}) == "family.kind"


def test_family_bounds():
    fam = dict(BASE["family"])
    assert _bad(family={**fam, "cyclotomic": 3}) == "family.cyclotomic"
    assert _bad(family={**fam, "cutoff": -1}) == "family.cutoff"
    assert _bad(family={k: v for k, v in fam.items() if k != "cutoff"}) == "family.cutoff"
    assert _bad(perturb={"suite": "bogus"}) == "perturb.suite"
    assert _bad(gamma={"alphas": ["pi"]}) == "gamma.alphas"


def test_setup_rejects_bad_lie():
    sc = parse_scenario({"family": {**BASE["family"], "lie": "e8"}})
    from qvertex.scenario import Setup
    with pytest.raises(ConfigError) as err:
        Setup(sc)
    assert err.value.field == "family.lie"


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_scenario(str(tmp_path / "absent.toml"))


def test_window_scale():
    sc = scenario("twisted_abelian_T2").scaled(2)
    assert sc.window["modes"] == 6 and sc.window["exponent"] == 16
    with pytest.raises(ConfigError):
        sc.scaled(0)


def test_bundled_scenarios_build():
    for name in ("twisted_affine_T2", "sublattice_k2", "quantum_heisenberg"):
        s = setup(name)
        assert s.gens and s.gamma
    assert raw("bad_window")["window"] == 0
