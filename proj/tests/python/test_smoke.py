import os
import subprocess

import numpy as np
import pytest

import grayenh


def dark_ramp(width=256, height=256):
    x = np.arange(width, dtype=float) / (width - 1)
    return np.tile(x * x * 255.0, (height, 1))


def test_basis_rows_sum_to_one():
    params = grayenh.LambdaParams(k=3, lambda_=2.0)
    row = grayenh.lambda_row(params, 63.75)
    assert len(row) == 4
    assert sum(row) == pytest.approx(1.0, abs=1e-12)
    assert grayenh.bernstein(1, grayenh.LambdaParams(3, 1.0), 255 / 4) == pytest.approx(0.421875)


def test_transform_evaluates_example():
    t = grayenh.PiecewiseLinearTransform([0, 100, 200], [0, 150, 200], 200.0)
    assert t.coefficients == pytest.approx([1.25, -0.5, 0.25])
    assert t(50.0) == pytest.approx(75.0)
    assert t(150.0) == pytest.approx(175.0)


def test_stats_two_pixels():
    img = grayenh.GrayImage(np.array([[0.0, 255.0]]))
    s = grayenh.compute_stats(img, grayenh.LambdaParams(1, 2.0))
    assert s.means == [0.0, 255.0]
    assert s.accumulated == [0.25, 0.75]


def test_enhance_dark_ramp():
    img = grayenh.GrayImage(dark_ramp())
    cfg = grayenh.EnhancementConfig(k=3, lambda_=2.0, epsilon=1.0)
    result = grayenh.enhance(img, cfg)
    assert result.converged
    assert result.trace[-1].distance < 1.0
    out = result.enhanced.pixels
    assert out.shape == (256, 256)
    assert out.mean() > dark_ramp().mean()
    lut = grayenh.export_lut(result, 256)
    values = [v for _, v in lut]
    assert values == sorted(values)
    assert abs(values[0]) <= 0.5 and abs(values[-1] - 255.0) <= 0.5


def test_constant_image_raises():
    img = grayenh.GrayImage(np.full((4, 4), 12.0))
    with pytest.raises(grayenh.GrayEnhError, match="ConstantImage"):
        grayenh.enhance(img, grayenh.EnhancementConfig())


def test_pgm_roundtrip():
    data = b"P5\n3 1\n255\n" + bytes([0, 128, 255])
    img = grayenh.read_pgm(data)
    assert img.pixels.tolist() == [[0.0, 128.0, 255.0]]
    assert grayenh.write_pgm(img) == data


@pytest.mark.skipif("GRAYENH_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_stats(tmp_path):
    src = tmp_path / "two.pgm"
    src.write_bytes(b"P5\n2 1\n255\n" + bytes([0, 255]))
    out = tmp_path / "s.csv"
    proc = subprocess.run(
        [os.environ["GRAYENH_CLI"], "stats", str(src), "--k", "1", "--lambda", "2", "-o", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().splitlines()[1] == "0,0.000000,0.500000,0.250000"
