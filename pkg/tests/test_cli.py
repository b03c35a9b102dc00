import json
import math
import time

import pytest

from bmvt import goldens
from bmvt.cache import TableCache
from bmvt.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- characters verb -----------------------------------------------------------

def test_characters_csv(capsys):
    code, out, _ = run_cli(capsys, "characters", "--modulus", "12")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# schema=bmvt.characters/")
    assert lines[1] == "index,modulus,conductor,primitive,principal,order"
    assert len(lines) == 2 + 4          # phi(12) = 4 characters


def test_characters_primitive_only_json(capsys):
    code, out, _ = run_cli(capsys, "characters", "--modulus", "8",
                           "--primitive-only", "--output", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 2
    assert all(d["conductor"] == 8 for d in data)


def test_characters_values_mode(capsys):
    code, out, _ = run_cli(capsys, "characters", "--modulus", "3", "--values")
    assert code == 0
    assert "1,2,1,2" in out          # chi_1(2) has angle 1/2
    assert "1,3,zero" in out


# -- decompose verb ---------------------------------------------------------------

def test_decompose_json(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "decompose", "--f", "one", "--g", "log",
                           "--u1", "10", "--v1", "10", "--v2", "100",
                           "--N", "2000", "--output", "json",
                           "--cache-dir", str(cache_dir))
    assert code == 0
    data = json.loads(out)
    assert data["residual"] <= 1e-9
    assert data["U0"] == 10.0


def test_decompose_csv_carries_residual(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "decompose", "--f", "one", "--g", "log",
                           "--u1", "5", "--v1", "5", "--v2", "25",
                           "--N", "50", "--cache-dir", str(cache_dir))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# schema=bmvt.decompose/")
    assert lines[1].startswith("# residual=")
    assert lines[2] == "n,lambda1,lambda2,lambda3,lambda4,total,lambda_fg"
    assert len(lines) == 3 + 50


# -- weights verb ------------------------------------------------------------------

def test_weights_rows(capsys):
    code, out, _ = run_cli(capsys, "weights", "--f", "one",
                           "--v1", "10", "--v2", "100", "--V", "100,1000")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "V1,V2,V,h4_ratio,h4prime_normalized"
    assert len(lines) == 2 + 2


def test_weights_bless_writes_fixtures(capsys, tmp_path):
    fx = tmp_path / "golden.json"
    code, out, _ = run_cli(capsys, "weights", "--f", "one",
                           "--v1", "10", "--v2", "100", "--V", "1000",
                           "--bless", "--fixtures", str(fx))
    assert code == 0
    data = goldens.load_goldens(fx)
    key = goldens.h4_key("one", 10, 100, 1000)
    assert key in data[goldens.H4_RATIO]
    assert key in data[goldens.H4PRIME_NORMALIZED]


# -- lhs and fit verbs ----------------------------------------------------------------

def test_lhs_verb(capsys):
    code, out, _ = run_cli(capsys, "lhs", "--f", "von_mangoldt",
                           "--Q", "3", "--x", "5")
    assert code == 0
    data = json.loads(out)
    assert data["lhs"] == pytest.approx(math.log(60) + 1.5 * math.log(5))
    assert data["per_q"][1] == 0.0


def test_fit_verb(capsys):
    code, out, _ = run_cli(capsys, "fit", "--f", "one", "--stat", "beta:1",
                           "--grid", "1000,5000,20000")
    assert code == 0
    data = json.loads(out)
    assert 0.8 <= data["estimate"] <= 1.2


def test_fit_bad_stat_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fit", "--f", "one", "--stat", "gamma", "--grid", "10,20,30"])
    assert exc.value.code == 2


# -- verify verb ------------------------------------------------------------------------

def test_verify_small_grid_passes(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "verify", "--case", "classic",
                           "--x", "1000", "--Q", "3,10",
                           "--cache-dir", str(cache_dir))
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert len(data["reports"]) == 2
    rep = data["reports"][0]
    assert rep["residual"] <= 1e-9
    assert rep["lhs_total"] <= rep["triv1_bound"]


def test_verify_explicit_params(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "verify", "--case", "classic",
                           "--x", "500", "--Q", "4",
                           "--params", "5,10,10,100",
                           "--cache-dir", str(cache_dir))
    assert code == 0
    data = json.loads(out)
    assert data["reports"][0]["U1"] == 10.0


def test_verify_csv_output(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "verify", "--case", "classic",
                           "--x", "500", "--Q", "3", "--output", "csv",
                           "--cache-dir", str(cache_dir))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# schema=bmvt.report/")
    assert lines[1].startswith("case,x,Q,")


def test_verify_malformed_grid_exits_2(capsys, cache_dir):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--case", "classic", "--x", "10,5", "--Q", "3",
              "--cache-dir", str(cache_dir)])
    assert exc.value.code == 2


def test_verify_golden_mismatch_fails(capsys, cache_dir, tmp_path):
    # plant a wrong golden value and expect a named failure plus exit 1
    fx = tmp_path / "golden.json"
    data = goldens.empty_goldens()
    data[goldens.THEOREM_RATIO][goldens.theorem_key("classic", 1000, 3)] = 0.5
    goldens.save_goldens(data, fx)
    code, out, err = run_cli(capsys, "verify", "--case", "classic",
                             "--x", "1000", "--Q", "3",
                             "--cache-dir", str(cache_dir),
                             "--fixtures", str(fx))
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    assert any("theorem-ratio-golden" in f and "x=1000" in f and "Q=3" in f
               for f in payload["failures"])
    assert "FAIL" in err


def test_verify_bless_then_pass(capsys, cache_dir, tmp_path):
    fx = tmp_path / "golden.json"
    code, _, _ = run_cli(capsys, "verify", "--case", "classic",
                         "--x", "500,1000", "--Q", "3", "--bless",
                         "--cache-dir", str(cache_dir), "--fixtures", str(fx))
    assert code == 0
    code, out, _ = run_cli(capsys, "verify", "--case", "classic",
                           "--x", "500,1000", "--Q", "3",
                           "--cache-dir", str(cache_dir), "--fixtures", str(fx))
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_reports_identical_across_threads(capsys, cache_dir):
    _, out1, _ = run_cli(capsys, "verify", "--case", "classic",
                         "--x", "500,1000", "--Q", "3,5", "--threads", "1",
                         "--cache-dir", str(cache_dir))
    _, out2, _ = run_cli(capsys, "verify", "--case", "classic",
                         "--x", "500,1000", "--Q", "3,5", "--threads", "4",
                         "--cache-dir", str(cache_dir))
    assert out1 == out2


def test_verify_csv_byte_identical_for_identical_config(capsys, cache_dir):
    args = ("verify", "--case", "classic", "--x", "500,1000", "--Q", "3",
            "--output", "csv", "--cache-dir", str(cache_dir))
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_verify_lambda_k_uses_cubed_log(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "verify", "--case", "lambda-k", "--k", "2",
                           "--x", "1000", "--Q", "3",
                           "--cache-dir", str(cache_dir))
    assert code == 0
    data = json.loads(out)
    assert data["case"] == "lambda_k(2)"
    assert data["reports"][0]["theorem_log_exponent"] == 3.0


def test_verify_custom_case_fits_exponents(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "verify", "--case", "custom",
                           "--f", "one", "--g", "log",
                           "--x", "1000", "--Q", "3",
                           "--cache-dir", str(cache_dir))
    assert code == 0
    data = json.loads(out)
    assert data["case"] == "custom(one,log)"
    rep = data["reports"][0]
    assert rep["residual"] <= 1e-9
    # fitted exponents land near the known classic values, so the combined
    # log exponent should be near 2
    assert 1.0 <= rep["theorem_log_exponent"] <= 3.5


# -- cache verb and cache behavior --------------------------------------------------------

def test_lhs_csv_output(capsys):
    code, out, _ = run_cli(capsys, "lhs", "--f", "von_mangoldt",
                           "--Q", "3", "--x", "5", "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "q,contribution,cumulative"
    assert len(lines) == 2 + 3


def test_cache_verb_builds_manifest(capsys, cache_dir):
    code, out, _ = run_cli(capsys, "cache", "--N", "500",
                           "--names", "mobius,von_mangoldt",
                           "--cache-dir", str(cache_dir))
    assert code == 0
    manifest = json.loads(out)
    assert set(manifest["entries"]) == {"mobius_500", "von_mangoldt_500"}


def test_cache_handles_exponent_names(cache_dir):
    cache = TableCache(cache_dir)
    t = cache.load_or_build("lambda_k(2)", 300)
    assert t.name == "lambda_k(2)"
    again = TableCache(cache_dir).load_or_build("lambda_k(2)", 300)
    assert again[4] == pytest.approx(t[4])
    assert (cache_dir / "lambda_k_2_300.ftab").exists()


def test_cache_second_run_loads_not_rebuilds(cache_dir):
    cache = TableCache(cache_dir)
    cache.load_or_build("mobius", 300)
    stamp1 = cache.manifest["entries"]["mobius_300"]["built_at"]
    cache2 = TableCache(cache_dir)
    t = cache2.load_or_build("mobius", 300)
    assert t[6] == 1
    assert cache2.manifest["entries"]["mobius_300"]["built_at"] == stamp1


def test_cache_shorter_entry_not_used_for_longer_run(cache_dir):
    cache = TableCache(cache_dir)
    cache.load_or_build("mobius", 100)
    t = cache.load_or_build("mobius", 200)
    assert t.N == 200
    assert {"mobius_100", "mobius_200"} <= set(cache.manifest["entries"])


def test_cache_corruption_triggers_rebuild(cache_dir):
    cache = TableCache(cache_dir)
    cache.load_or_build("mobius", 120)
    path = cache.dir / cache.manifest["entries"]["mobius_120"]["file"]
    path.write_bytes(b"garbage")
    t = TableCache(cache_dir).load_or_build("mobius", 120)
    assert t[1] == 1 and t.N == 120


def test_cache_deleting_one_file_rebuilds_only_that_table(cache_dir):
    cache = TableCache(cache_dir)
    cache.load_or_build("mobius", 150)
    cache.load_or_build("totient", 150)
    stamp_tot = cache.manifest["entries"]["totient_150"]["built_at"]
    (cache.dir / cache.manifest["entries"]["mobius_150"]["file"]).unlink()
    time.sleep(0.01)
    cache2 = TableCache(cache_dir)
    cache2.load_or_build("mobius", 150)
    cache2.load_or_build("totient", 150)
    assert cache2.manifest["entries"]["totient_150"]["built_at"] == stamp_tot
    assert cache2.manifest["entries"]["mobius_150"]["built_at"] != ""


def test_env_var_overrides_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("BMVT_CACHE_DIR", str(tmp_path / "envcache"))
    from bmvt.cache import default_cache_dir
    assert default_cache_dir() == tmp_path / "envcache"
