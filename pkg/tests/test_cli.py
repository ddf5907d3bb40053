import pytest

from malcevlab import classify
from malcevlab.algebra import Algebra
from malcevlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_writes_loadable_file(tmp_path, capsys):
    out = tmp_path / "atilde.alg"
    code, stdout, _ = run_cli(capsys, "build", "paper-example", "-o", str(out))
    assert code == 0
    assert "dim: 23" in stdout
    algebra = Algebra.load(out)
    assert algebra.dim == 23
    assert algebra.labels[-1] == "v"


def test_build_free_and_zoo(tmp_path, capsys):
    out = tmp_path / "f.alg"
    code, stdout, _ = run_cli(capsys, "build", "free", "2", "3", "-o", str(out))
    assert code == 0 and "dim: 3" in stdout
    code, stdout, _ = run_cli(capsys, "build", "zoo", "heisenberg", "-o", str(out))
    assert code == 0 and "dim: 3" in stdout


def test_build_unknown_descriptor(tmp_path, capsys):
    code, _, stderr = run_cli(capsys, "build", "nonsense")
    assert code == 2
    assert "descriptor" in stderr


def test_round_trip_classification_matches_in_memory(tmp_path, capsys):
    from malcevlab import second_type_example

    out = tmp_path / "atilde.alg"
    run_cli(capsys, "build", "paper-example", "-o", str(out))
    loaded = Algebra.load(out)
    in_memory = classify(second_type_example())
    reloaded = classify(loaded)
    assert in_memory.summary() == reloaded.summary()
    assert {k: v.indices for k, v in in_memory.witnesses.items()} == {
        k: v.indices for k, v in reloaded.witnesses.items()
    }


def test_check_exit_codes(tmp_path, capsys):
    out = tmp_path / "atilde.alg"
    run_cli(capsys, "build", "paper-example", "-o", str(out))
    code, stdout, _ = run_cli(capsys, "check", str(out), "malcev")
    assert code == 0 and "status: holds" in stdout
    code, stdout, _ = run_cli(capsys, "check", str(out), "first_type_5")
    assert code == 1
    assert "witness: (x1, x2, x3, x4)" in stdout
    assert "residual: -3*v" in stdout
    code, _, stderr = run_cli(capsys, "check", str(out), "no_such_identity")
    assert code == 2 and "catalog" in stderr
    code, _, stderr = run_cli(capsys, "check", str(out), "bad : x | x*x = x")
    assert code == 2
    code, _, stderr = run_cli(capsys, "check", str(tmp_path / "missing.alg"), "malcev")
    assert code == 2


def test_check_identity_flag_lookup(tmp_path, capsys):
    out = tmp_path / "atilde.alg"
    run_cli(capsys, "build", "paper-example", "-o", str(out))
    code, stdout, _ = run_cli(capsys, "check", str(out), "--identity", "first_type_4")
    assert code == 1
    assert "identity: first_type_4" in stdout
    assert "residual: -2*v" in stdout
    # exactly one of positional / flag
    code, _, stderr = run_cli(capsys, "check", str(out))
    assert code == 2
    code, _, stderr = run_cli(capsys, "check", str(out), "malcev", "--identity", "jacobi")
    assert code == 2


def test_check_accepts_dsl(tmp_path, capsys):
    out = tmp_path / "atilde.alg"
    run_cli(capsys, "build", "paper-example", "-o", str(out))
    code, stdout, _ = run_cli(
        capsys, "check", str(out), "z5 : x,y,z,u | J(x,y,z)*u = 0"
    )
    assert code == 1
    assert "identity: z5" in stdout
    assert "residual: -3*v" in stdout


def test_classify_output(tmp_path, capsys):
    out = tmp_path / "atilde.alg"
    run_cli(capsys, "build", "paper-example", "-o", str(out))
    code, stdout, _ = run_cli(capsys, "classify", str(out))
    assert code == 0
    assert "malcev: True" in stdout
    assert "second_type: True" in stdout
    assert "first_type: False" in stdout
    assert "witness.first_type_4: (x1, x2, x3, x4) -> -2*v" in stdout


def test_classify_is_deterministic(tmp_path, capsys):
    out = tmp_path / "oct.alg"
    run_cli(capsys, "build", "zoo", "octonion_malcev", "-o", str(out))
    _, first, _ = run_cli(capsys, "classify", str(out))
    _, second, _ = run_cli(capsys, "classify", str(out))
    assert first == second


def test_kernel_and_powers(tmp_path, capsys):
    out = tmp_path / "atilde.alg"
    run_cli(capsys, "build", "paper-example", "-o", str(out))
    code, stdout, _ = run_cli(capsys, "kernel", str(out))
    assert code == 0 and "kernel-dim: 13" in stdout
    code, stdout, _ = run_cli(capsys, "powers", str(out))
    assert code == 0
    assert "power.2: 19" in stdout
    assert "power.5: 0" in stdout
    assert "class: 5" in stdout


def test_powers_trims_when_stable(tmp_path, capsys):
    out = tmp_path / "cross.alg"
    run_cli(capsys, "build", "zoo", "cross_product", "-o", str(out))
    code, stdout, _ = run_cli(capsys, "powers", str(out))
    assert code == 0
    assert "power.1: 3" in stdout and "power.2: 3" in stdout
    assert "power.3" not in stdout  # stabilized
    assert "nilpotent: no" in stdout


def test_generate_by_labels_and_coords(tmp_path, capsys):
    src = tmp_path / "atilde.alg"
    dst = tmp_path / "sub.alg"
    run_cli(capsys, "build", "paper-example", "-o", str(src))
    code, stdout, _ = run_cli(
        capsys, "generate", str(src), "x1", "x2", "x3", "-o", str(dst)
    )
    assert code == 0
    assert "subalgebra-dim: 9" in stdout
    sub = Algebra.load(dst)
    assert sub.dim == 9
    coords = ",".join(["1"] + ["0"] * 22)
    code, stdout, _ = run_cli(capsys, "generate", str(src), coords, "1")
    assert code == 0 and "subalgebra-dim: 3" in stdout  # x1, x2, [x1,x2]
    code, _, stderr = run_cli(capsys, "generate", str(src), "nope")
    assert code == 2


def test_machine_readable_format(tmp_path, capsys):
    out = tmp_path / "heis.alg"
    run_cli(capsys, "build", "zoo", "heisenberg", "-o", str(out))
    code, stdout, _ = run_cli(
        capsys, "check", str(out), "jacobi", "--format", "machine-readable"
    )
    assert code == 0
    lines = stdout.strip().splitlines()
    assert all(": " in line for line in lines)
    assert "status: holds" in stdout


def test_corrupt_psi_mode_breaks_malcev():
    """Test mode: one corrupted form value makes the Malcev check fail
    with a witness (exercised through the suite session wiring)."""
    from malcevlab.verify import _Session, _check_classification, corrupted_psi_entries

    entries = dict(((w1, w2), v) for w1, w2, v in corrupted_psi_entries())
    assert entries[("[x1,x2]", "[x3,x4]")] == 3
    session = _Session(seed=0, jobs=1, corrupt_psi=True)
    results = {r.key: r for r in _check_classification(session)}
    malcev = results["classify_23.malcev"]
    assert not malcev.passed
    assert any("witness" in d for d in malcev.details)


def test_verify_parser_accepts_flags():
    from malcevlab.cli import _build_parser

    args = _build_parser().parse_args(
        ["verify-paper", "--seed", "3", "--jobs", "2", "--format", "machine-readable", "--corrupt-psi"]
    )
    assert args.seed == 3 and args.jobs == 2 and args.corrupt_psi
    with pytest.raises(SystemExit) as info:
        _build_parser().parse_args(["verify-paper", "--format", "json"])
    assert info.value.code == 2
