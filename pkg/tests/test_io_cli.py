import numpy as np
import pytest

from oracles import longtime_grid
from wignerwalk.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, UsageError, grid_filename, main, \
    parse_args
from wignerwalk.ensemble import EnsembleSpec, ensemble_snapshot
from wignerwalk.io import diverging_rgb, heatmap_pixels, parse_header, read_grid_csv, read_ppm, \
    render_heatmap, write_grid_csv
from wignerwalk.model import DisorderKind, build_h0
from wignerwalk.spectral import eigendecompose
from wignerwalk.wigner import GridMeta, PhaseSpaceGrid, wigner_at, wigner_snapshot


def _t0_grid(n, j):
    return wigner_at(eigendecompose(build_h0(n)), j, 0.0)


def test_csv_t0_row(tmp_path):
    path = tmp_path / "g.csv"
    write_grid_csv(wigner_snapshot(np.eye(5)[2], j=2), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# ")
    assert lines[3] == ",".join(["0.20000000000000001"] * 5)
    assert len(lines) == 6


def test_csv_header_fields(tmp_path):
    path = tmp_path / "g.csv"
    meta = GridMeta(n=3, j=1, time=None, kind=DisorderKind.DOD, delta=0.25, seed=7, r=1000)
    write_grid_csv(PhaseSpaceGrid(np.eye(3) / 3, meta), path)
    header = path.read_text().splitlines()[0]
    for key in ("n=3", "j=1", "time=longtime", "kind=dod", "delta=0.25", "r=1000", "seed=7",
                "version="):
        assert key in header
    assert parse_header(header) == meta


def test_csv_shape_n101(tmp_path):
    path = tmp_path / "g.csv"
    write_grid_csv(_t0_grid(101, 50), path)
    rows = path.read_text().splitlines()[1:]
    assert len(rows) == 101 and all(len(r.split(",")) == 101 for r in rows)


def test_csv_round_trip_exact(tmp_path):
    g = ensemble_snapshot(EnsembleSpec(n=31, kind="dod", delta=0.5, r=3, base_seed=2,
                                       times=(40.0,))).grid(40.0)
    path = tmp_path / "g.csv"
    write_grid_csv(g, path)
    back = read_grid_csv(path)
    assert np.array_equal(back.w, g.w)
    assert back.meta == g.meta


def test_read_rejects_wrong_shape(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("# n=3 j=0 time=0.0 kind=none delta=0.0 r=1 seed=0 version=x\n1,2,3\n")
    with pytest.raises(ValueError):
        read_grid_csv(path)


def test_zero_grid_renders_white(tmp_path):
    g = PhaseSpaceGrid(np.zeros((6, 6)), GridMeta(n=6, j=0))
    path = tmp_path / "z.ppm"
    render_heatmap(g, path, zoom=3)
    img = read_ppm(path)
    assert img.shape == (18, 18, 3)
    assert np.all(img == 255)


def test_colormap_endpoints():
    rgb = diverging_rgb(np.array([[1.0, 0.0, -1.0, 0.5]]))
    assert rgb[0, 0].tolist() == [255, 0, 0]
    assert rgb[0, 1].tolist() == [255, 255, 255]
    assert rgb[0, 2].tolist() == [0, 0, 255]
    assert rgb[0, 3].tolist() == [255, 128, 128]


def test_heatmap_orientation_t0_even(tmp_path):
    n, j, zoom = 8, 2, 2
    path = tmp_path / "t0.ppm"
    render_heatmap(_t0_grid(n, j), path, zoom=zoom)
    img = read_ppm(path)
    assert img.shape == (n * zoom, n * zoom, 3)
    # column x = j is red for every kappa; column j + N/2 alternates, kappa = 0 at the bottom
    assert np.all(img[:, j * zoom] == [255, 0, 0])
    opposite = img[::-1, (j + n // 2) * zoom][::zoom]
    for kappa, pixel in enumerate(opposite):
        assert pixel.tolist() == ([255, 0, 0] if kappa % 2 == 0 else [0, 0, 255])
    others = [x for x in range(n) if x not in (j, j + n // 2)]
    assert np.all(img[:, [x * zoom for x in others]] == 255)


def test_heatmap_max_cell_red():
    w = np.random.default_rng(0).normal(size=(11, 11))
    w[3, 4] = 10.0
    img = heatmap_pixels(PhaseSpaceGrid(w, GridMeta(n=11, j=0)), zoom=1)
    assert img[10 - 4, 3].tolist() == [255, 0, 0]


def test_parse_fig4_recipe():
    cfg = parse_args("evolve --n 101 --j 50 --kind dod --delta 0.5 --r 1000 --seed 7 "
                     "--times 1,10,20,40,100,500".split())
    assert (cfg.subcommand, cfg.n, cfg.j, cfg.kind, cfg.delta, cfg.r, cfg.base_seed) == \
        ("evolve", 101, 50, DisorderKind.DOD, 0.5, 1000, 7)
    assert cfg.times == (1, 10, 20, 40, 100, 500)


def test_parse_longtime_recipe():
    cfg = parse_args("longtime --n 100 --kind dod --delta 0.025 --r 1000 --seed 1".split())
    assert cfg.spec().j == 50 and cfg.delta == 0.025 and cfg.kind is DisorderKind.DOD


@pytest.mark.parametrize("argv", ["evolve --delta 0.9", "evolve --delta -0.1", "evolve --n 2",
                                  "evolve --bogus 1", "evolve --kind xx", "evolve --times a,b",
                                  "evolve --n 10 --j 10", "frobnicate"])
def test_parse_rejects(argv):
    with pytest.raises(UsageError):
        parse_args(argv.split())


def test_usage_error_exit_code(capsys):
    assert main(["evolve", "--delta", "0.9"]) == EXIT_USAGE
    assert "delta" in capsys.readouterr().err


def test_large_delta_override_warns():
    with pytest.warns(UserWarning):
        cfg = parse_args("evolve --delta 0.9 --allow-large-delta".split())
    assert cfg.spec().delta == 0.9


def test_filename_is_pure():
    cfg = parse_args("longtime --n 100 --kind dod --delta 0.025 --r 1000 --seed 1".split())
    assert grid_filename(cfg, None) == "longtime_dod_d0.025_N100_j50_longtime_R1000_s1.csv"
    cfg = parse_args("evolve --n 11 --kind dd --delta 0.5 --r 3".split())
    assert grid_filename(cfg, 40.0, ".ppm") == "evolve_dd_d0.5_N11_j5_t40_R3_s0.ppm"


def test_evolve_writes_csv_and_ppm_per_time(tmp_path):
    argv = (f"evolve --n 21 --kind dod --delta 0.5 --r 4 --seed 7 --times 1,10,20,40,100,500 "
            f"--image --quiet --output-dir {tmp_path}").split()
    assert main(argv) == EXIT_OK
    assert len(list(tmp_path.glob("*.csv"))) == 6
    assert len(list(tmp_path.glob("*.ppm"))) == 6
    assert (tmp_path / "evolve_dod_d0.5_N21_j10_t40_R4_s7.csv").exists()


def test_longtime_zero_disorder_cli(tmp_path):
    assert main(f"longtime --n 101 --delta 0 --quiet --output-dir {tmp_path}".split()) == EXIT_OK
    (path,) = tmp_path.glob("*.csv")
    assert np.max(np.abs(read_grid_csv(path).w - longtime_grid(101, 50))) <= 1e-9


def test_ensemble_subcommand_writes_longtime_too(tmp_path):
    argv = f"ensemble --n 13 --kind dd --delta 0.3 --r 3 --times 1,5 --quiet --output-dir {tmp_path}"
    assert main(argv.split()) == EXIT_OK
    names = sorted(p.name for p in tmp_path.glob("*.csv"))
    assert names == ["ensemble_dd_d0.3_N13_j6_longtime_R3_s0.csv",
                     "ensemble_dd_d0.3_N13_j6_t1_R3_s0.csv",
                     "ensemble_dd_d0.3_N13_j6_t5_R3_s0.csv"]


def test_render_subcommand(tmp_path):
    src = tmp_path / "g.csv"
    write_grid_csv(_t0_grid(7, 3), src)
    assert main(["render", str(src), "--zoom", "2"]) == EXIT_OK
    assert read_ppm(tmp_path / "g.ppm").shape == (14, 14, 3)


def test_verify_subcommand(capsys):
    assert main("verify --n 21 --kind dd --delta 0.25 --r 20".split()) == EXIT_OK
    assert "PASS" in capsys.readouterr().out


def test_verify_failure_exit(monkeypatch, capsys):
    import wignerwalk.cli as cli
    monkeypatch.setattr(cli, "verify_interchange", lambda *a, **k: {"max_dev": 1.0})
    assert main("verify --n 7 --kind dd --delta 0.25 --r 2".split()) == EXIT_RUNTIME


def test_runtime_error_exit(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    argv = f"longtime --n 7 --delta 0 --quiet --output-dir {blocker}/sub".split()
    assert main(argv) == EXIT_RUNTIME
    assert "wignerwalk:" in capsys.readouterr().err
