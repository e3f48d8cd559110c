import math

import numpy as np
import pytest

from catent.entropy import EntropySeries, FrequencyField
from catent import reports


def small_series():
    n = np.array([1, 2, 3])
    h_total = np.array([0.6931471805599453, 1.3862943611198906, 1.9459101090932196])
    return EntropySeries(n=n, H=h_total, h=h_total / n, engine="frequency")


def test_format_float_round_trips():
    for x in (0.1, 1 / 3, 2 * math.log(200), 1e-17, 123456.789):
        assert float(reports.format_float(x)) == x


def test_alpha_label():
    assert reports.alpha_label(1.0) == "1"
    assert reports.alpha_label(0.05) == "0.05"
    assert reports.alpha_label(-2.0) == "-2"


def test_entropy_csv_round_trip(tmp_path):
    path = str(tmp_path / "series.csv")
    series = small_series()
    reports.write_entropy_csv(path, series)
    with open(path) as fh:
        assert fh.readline().strip() == "n,H_nats,h_nats"
    back = reports.read_entropy_csv(path)
    assert np.array_equal(back.n, series.n)
    assert np.array_equal(back.H, series.H)  # exact, 17-digit round trip
    assert np.array_equal(back.h, series.h)


def test_lyapunov_csv_round_trip(tmp_path):
    path = str(tmp_path / "fit.csv")
    rows = [(1.0, 2, 1.1658, 0.9624236501192069), (-2.0, 2, 0.25, None)]
    reports.write_lyapunov_csv(path, rows)
    back = reports.read_lyapunov_csv(path)
    assert back == rows
    text = open(path).read()
    assert text.splitlines()[0] == "alpha,m,l_m,theoretical"
    assert text.splitlines()[2].endswith(",")  # blank theoretical column


def test_frequency_csv_round_trip(tmp_path):
    counts = np.array([[2, 0, 0], [1, 0, 0], [0, 0, 1]], dtype=np.int64)
    field = FrequencyField(counts=counts, n=2, partition_size=2)
    path = str(tmp_path / "nu.csv")
    reports.write_frequency_csv(path, field)
    back = reports.read_frequency_csv(path)
    assert np.array_equal(back, field.nu)  # lossless sidecar


def test_density_gray_mapping():
    nu = np.array([[0.0, 0.5], [0.25, 1.0]])
    gray = reports.density_gray(nu)
    assert gray.dtype == np.uint8
    assert gray.tolist() == [[0, 128], [64, 255]]
    uniform = reports.density_gray(np.full((4, 4), 1 / 16))
    assert np.all(uniform == 255)
    with pytest.raises(ValueError):
        reports.density_gray(np.zeros((2, 2)))


def test_field_to_image_orientation():
    # l1 runs rightward (columns), l2 upward (rows from the bottom)
    gray = np.zeros((3, 3), dtype=np.uint8)
    gray[2, 0] = 255  # l1=2, l2=0
    img = reports.field_to_image(gray)
    assert img[2, 2] == 255  # bottom row, third column
    assert img.sum() == 255


def test_pgm_round_trip(tmp_path):
    rng = np.random.default_rng(12)
    gray = rng.integers(0, 256, size=(5, 7), dtype=np.uint8)
    path = str(tmp_path / "img.pgm")
    reports.write_pgm(path, gray, comment="alpha=1 N=7 n=3")
    back, comment = reports.read_pgm(path)
    assert np.array_equal(back, gray)
    assert comment == "alpha=1 N=7 n=3"
    raw = open(path, "rb").read()
    assert raw.startswith(b"P5\n# alpha=1 N=7 n=3\n7 5\n255\n")


def test_pgm_writer_guards(tmp_path):
    with pytest.raises(ValueError):
        reports.write_pgm(str(tmp_path / "x.pgm"), np.zeros(4, dtype=np.uint8))
    with pytest.raises(ValueError):
        reports.write_pgm(
            str(tmp_path / "x.pgm"), np.zeros((2, 2), dtype=np.uint8), comment="a\nb"
        )


def test_write_density_pgm_deterministic(tmp_path):
    counts = np.zeros((6, 6), dtype=np.int64)
    counts[1, 2] = 3
    counts[4, 0] = 1
    field = FrequencyField(counts=counts, n=2, partition_size=2)
    p1 = str(tmp_path / "a.pgm")
    p2 = str(tmp_path / "b.pgm")
    reports.write_density_pgm(p1, field, "c")
    reports.write_density_pgm(p2, field, "c")
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_figures_render_to_files(tmp_path):
    series = small_series()
    fig1 = str(tmp_path / "entropy.png")
    reports.entropy_figure(fig1, {1.0: series, 0.5: series}, n_grid=8)
    fig2 = str(tmp_path / "lyap.png")
    reports.lyapunov_figure(
        fig2, [(0.5, 2, 0.4, 0.69), (0.5, 3, 0.5, 0.69), (1.0, 2, 0.8, 0.96), (1.0, 3, 0.9, 0.96)]
    )
    fig3 = str(tmp_path / "density.png")
    nu = np.zeros((6, 6))
    nu[2, 3] = 1.0
    reports.density_figure(fig3, [(1, nu), (2, nu)])
    for path in (fig1, fig2, fig3):
        data = open(path, "rb").read()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"
        assert len(data) > 1000


def test_readers_reject_foreign_headers(tmp_path):
    bad = tmp_path / "x.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError, match="header"):
        reports.read_entropy_csv(str(bad))
    with pytest.raises(ValueError, match="header"):
        reports.read_lyapunov_csv(str(bad))
    with pytest.raises(ValueError, match="header"):
        reports.read_frequency_csv(str(bad))
