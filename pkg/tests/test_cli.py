import csv
import json

import pytest

from progressive_er.cli import main
from progressive_er.evaluation import CURVE_HEADER
from progressive_er.methods import METHODS


@pytest.fixture
def fixture_files(tmp_path):
    data = tmp_path / "fixture.csv"
    data.write_text("id,name\na,john smith\nb,john smith\nc,mary jones\nd,mary smith\n")
    gt = tmp_path / "fixture_gt.csv"
    gt.write_text("a,b\nc,d\n")
    return data, gt


def base(data, gt):
    return ["--dataset", str(data), "--gt", str(gt), "--id-column", "id"]


def read(path):
    return list(csv.reader(open(path)))


def test_run_writes_curve(tmp_path, fixture_files, capsys):
    out = tmp_path / "curve.csv"
    summary = tmp_path / "summary.csv"
    code = main(["run", "--method", "pbs", *base(*fixture_files), "--out", str(out), "--summary", str(summary)])
    assert code == 0
    rows = read(out)
    assert rows[0] == CURVE_HEADER
    assert [r[2:4] for r in rows[1:]] == [["0", "1"], ["2", "3"], ["0", "3"], ["1", "3"]]
    assert read(summary)[1][3] == "1.0"
    assert capsys.readouterr().out.startswith("pbs fixture emitted=4 recall=1.0000")


def test_unknown_method_exits_2(fixture_files, capsys):
    assert main(["run", "--method", "magic", *base(*fixture_files)]) == 2
    assert "unknown method" in capsys.readouterr().err


def test_stray_parameter_exits_2(fixture_files):
    assert main(["run", "--method", "pbs", "--w-max", "5", *base(*fixture_files)]) == 2
    assert main(["run", "--method", "gs-psn", "--w-max", "5", *base(*fixture_files)]) == 0


def test_missing_ground_truth_exits_3(tmp_path, fixture_files, capsys):
    data, _ = fixture_files
    assert main(["run", "--method", "pbs", *base(data, tmp_path / "nope.csv")]) == 3
    assert "ingestion error" in capsys.readouterr().err


def test_unknown_gt_id_exits_3(tmp_path, fixture_files):
    data, _ = fixture_files
    gt = tmp_path / "bad_gt.csv"
    gt.write_text("a,zz\n")
    assert main(["run", "--method", "pbs", *base(data, gt)]) == 3


def test_runtime_error_exits_4(tmp_path):
    data = tmp_path / "lonely.csv"
    data.write_text("name\nalpha\nbeta\n")
    gt = tmp_path / "gt.csv"
    gt.write_text("0,1\n")
    assert main(["run", "--method", "pbs", "--dataset", str(data), "--gt", str(gt)]) == 4


def test_bench_all_methods(tmp_path, fixture_files):
    summary = tmp_path / "summary.csv"
    curves = tmp_path / "curves"
    code = main(["bench", "--methods", ",".join(METHODS), *base(*fixture_files), "--summary", str(summary),
                 "--curves-dir", str(curves), "--budget", "none"])
    assert code == 0
    rows = read(summary)
    assert [r[0] for r in rows[1:]] == list(METHODS)
    assert sorted(p.name for p in curves.iterdir()) == sorted(f"{m}.csv" for m in METHODS)


def test_bench_empty_method_list_exits_2(fixture_files):
    assert main(["bench", "--methods", *base(*fixture_files)]) == 2


def test_bench_single_method_equals_run(tmp_path, fixture_files):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    common = [*base(*fixture_files), "--no-timing"]
    assert main(["run", "--method", "pbs", *common, "--summary", str(a)]) == 0
    assert main(["bench", "--methods", "pbs", *common, "--summary", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_repeat_runs_are_byte_identical(tmp_path):
    assert main(["synth", "--n", "300", "--seed", "3", "--out-dir", str(tmp_path), "--stem", "s"]) == 0
    outputs = []
    for run in range(2):
        d = tmp_path / f"run{run}"
        args = ["bench", "--methods", *METHODS, "--dataset", str(tmp_path / "s.csv"), "--gt",
                str(tmp_path / "s_gt.csv"), "--id-column", "id", "--no-timing", "--matcher", "jaccard",
                "--summary", str(d / "summary.csv"), "--curves-dir", str(d)]
        assert main(args) == 0
        outputs.append({p.name: p.read_bytes() for p in d.iterdir()})
    assert outputs[0] == outputs[1]
    assert len(outputs[0]) == len(METHODS) + 1


def test_config_file_supplies_values_and_flags_win(tmp_path, fixture_files):
    data, gt = fixture_files
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "curve.csv"
    cfg.write_text(json.dumps({"method": "pbs", "dataset": str(data), "gt": str(gt), "id-column": "id",
                               "budget": 1, "out": str(out)}))
    assert main(["run", "--config", str(cfg)]) == 0
    assert len(read(out)) == 3
    assert main(["run", "--config", str(cfg), "--budget", "none"]) == 0
    assert len(read(out)) == 5


def test_bad_config_file_exits_2(tmp_path, fixture_files):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    assert main(["run", "--method", "pbs", "--config", str(cfg), *base(*fixture_files)]) == 2


def test_clean_clean_run(tmp_path):
    assert main(["synth", "--n", "60", "--dup-rate", "0.2", "--seed", "1", "--clean-clean",
                 "--out-dir", str(tmp_path)]) == 0
    out = tmp_path / "curve.csv"
    code = main(["run", "--method", "pps", "--dataset", str(tmp_path / "synth_0.csv"), str(tmp_path / "synth_1.csv"),
                 "--gt", str(tmp_path / "synth_gt.csv"), "--id-column", "id", "--out", str(out)])
    assert code == 0
    rows = read(out)[1:]
    assert all(int(i) < 30 <= int(j) for _, _, i, j, *_ in rows)


def test_synth_bad_parameters_exit_2(tmp_path):
    assert main(["synth", "--n", "1", "--out-dir", str(tmp_path)]) == 2
    assert main(["synth", "--noise", "1.0", "--out-dir", str(tmp_path)]) == 2
    assert main(["synth", "--dup-rate", "0", "--out-dir", str(tmp_path)]) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--w-max", "many"])
    assert exc.value.code == 2
