"""End-to-end checks of the command line entry point."""

import json

import pytest

from tqps.cli import main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv + ["--format", "json"])
    return code, json.loads(out)


def test_list_names_every_suite(capsys):
    code, out = run(capsys, ["--list"])
    assert code == 0
    for name in (
        "fdl enumerate",
        "birkhoff roundtrip",
        "verify psi",
        "verify cocycle",
        "verify kernel-images",
        "verify freeness",
        "classical lattice",
        "classical transitions",
        "export hasse",
    ):
        assert name in out


def test_no_command_prints_help(capsys):
    code, out = run(capsys, [])
    assert code == 2
    assert "usage" in out.lower()


def test_fdl_enumerate(capsys):
    code, payload = run_json(capsys, ["fdl", "enumerate", "--generators", "3"])
    assert code == 0
    assert payload["size"] == 18
    assert payload["antichains_with_empty"] == 20
    assert payload["consistent"] is True
    code, out = run(capsys, ["fdl", "enumerate", "--generators", "2"])
    assert code == 0
    assert "size: 4" in out


def test_fdl_enumerate_lists_small_cases(capsys):
    code, payload = run_json(capsys, ["fdl", "enumerate", "--generators", "2"])
    assert code == 0
    assert len(payload["elements"]) == 4


def test_birkhoff_roundtrip(capsys):
    code, payload = run_json(
        capsys,
        ["birkhoff", "roundtrip", "--poset-size", "5", "--trials", "20", "--seed", "3"],
    )
    assert code == 0
    assert payload["passed"] is True
    assert payload["trials"] == 20


def test_verify_psi(capsys):
    code, payload = run_json(capsys, ["verify", "psi", "--n", "2", "--samples", "40"])
    assert code == 0
    assert payload["passed"] is True
    assert payload["check"] == "gluing-involution"


def test_verify_cocycle(capsys):
    code, payload = run_json(capsys, ["verify", "cocycle", "--n", "2", "--samples", "10"])
    assert code == 0
    assert payload["passed"] is True


def test_verify_kernel_images(capsys):
    code, payload = run_json(
        capsys, ["verify", "kernel-images", "--n", "2", "--samples", "5"]
    )
    assert code == 0
    assert payload["passed"] is True
    assert len(payload["reports"]) == 6
    assert all(r["passed"] for r in payload["reports"])


def test_verify_freeness(capsys):
    code, payload = run_json(
        capsys, ["verify", "freeness", "--n", "1", "--samples", "10"]
    )
    assert code == 0
    assert payload["verdict"] == "FREE"


def test_verify_freeness_control_fails(capsys):
    code, payload = run_json(
        capsys,
        [
            "verify",
            "freeness",
            "--n",
            "2",
            "--samples",
            "10",
            "--generator-map",
            "1=0",
        ],
    )
    assert code == 1
    assert payload["verdict"] == "NOT_FREE"
    assert payload["witness"]["clause"] == "order"


def test_classical_lattice(capsys):
    code, payload = run_json(capsys, ["classical", "lattice", "--n", "2"])
    assert code == 0
    assert payload["size"] == 18
    assert payload["expected_size"] == 18
    assert payload["passed"] is True


def test_classical_transitions(capsys):
    code, payload = run_json(
        capsys, ["classical", "transitions", "--n", "2", "--trials", "25"]
    )
    assert code == 0
    assert payload["passed"] is True


def test_export_hasse_dot(capsys):
    code, out = run(capsys, ["export", "hasse", "--target", "fdl", "--generators", "2"])
    assert code == 0
    assert out.startswith("digraph")
    assert "->" in out


def test_export_hasse_targets(capsys):
    for target, extra in (
        ("classical", ["--n", "1"]),
        ("kernels", ["--n", "1"]),
    ):
        code, out = run(capsys, ["export", "hasse", "--target", target] + extra)
        assert code == 0
        assert "digraph" in out


def test_export_hasse_kernel_labels(capsys):
    code, out = run(capsys, ["export", "hasse", "--target", "kernels", "--n", "1"])
    assert code == 0
    assert "ker" in out


def test_json_output_is_deterministic(capsys):
    argv = ["verify", "psi", "--n", "1", "--samples", "20", "--format", "json"]
    first = run(capsys, argv)
    second = run(capsys, argv)
    assert first == second


def test_bad_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "psi", "--n", "9"])  # beyond the supported range
    assert exc.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["verify", "psi"])  # --n is required
    assert exc.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["fdl", "enumerate", "--generators", "0"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_threaded_kernel_images_match_serial(capsys, monkeypatch):
    argv = ["verify", "kernel-images", "--n", "2", "--samples", "3", "--format", "json"]
    monkeypatch.setenv("TQPS_THREADS", "1")
    serial = run(capsys, argv)
    monkeypatch.setenv("TQPS_THREADS", "4")
    threaded = run(capsys, argv)
    assert serial == threaded
