import numpy as np
import pytest

from nzebkit import meteo
from nzebkit.errors import InputError
from nzebkit.solar import SiteSpec

SITE = SiteSpec(15.8, 120.59, 51, 8)


@pytest.fixture(scope="module")
def year_2021():
    return meteo.synthetic_year(SITE, 2021)


def _lines(series, tmp_path):
    path = tmp_path / "m.csv"
    meteo.write_meteo(series, path)
    return path, path.read_text().splitlines()


def test_round_trip_common_year(year_2021, tmp_path):
    path, _ = _lines(year_2021, tmp_path)
    back = meteo.load_meteo(path)
    assert len(back) == 8760
    assert np.allclose(back.ghi, year_2021.ghi, atol=0.05)
    assert np.isnan(back.dhi).all()
    rec = back[12]
    assert rec.timestamp.hour == 12 and rec.dhi is None


def test_leap_year_accepted(tsu_meteo):
    assert len(tsu_meteo) == 8784


def test_synthetic_year_is_deterministic():
    a = meteo.synthetic_year(SITE, 2021, seed=7)
    b = meteo.synthetic_year(SITE, 2021, seed=7)
    assert np.array_equal(a.ghi, b.ghi) and np.array_equal(a.t_ambient, b.t_ambient)
    assert (a.ghi >= 0).all()


def _rewrite(tmp_path, lines):
    path = tmp_path / "bad.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_negative_ghi_names_the_row(year_2021, tmp_path):
    _, lines = _lines(year_2021, tmp_path)
    ts, _, dhi, t = lines[101].split(",")
    lines[101] = ",".join([ts, "-5", dhi, t])
    with pytest.raises(InputError, match=r"bad\.csv:102") as exc:
        meteo.load_meteo(_rewrite(tmp_path, lines))
    assert "ghi" in str(exc.value)


def test_dhi_above_ghi_rejected(year_2021, tmp_path):
    _, lines = _lines(year_2021, tmp_path)
    ts, _, _, t = lines[13].split(",")
    lines[13] = ",".join([ts, "100", "150", t])
    with pytest.raises(InputError, match=":14"):
        meteo.load_meteo(_rewrite(tmp_path, lines))


def test_missing_column(year_2021, tmp_path):
    _, lines = _lines(year_2021, tmp_path)
    lines = [",".join(l.split(",")[:3]) for l in lines]
    with pytest.raises(InputError, match="tamb"):
        meteo.load_meteo(_rewrite(tmp_path, lines))


def test_non_monotonic_timestamps(year_2021, tmp_path):
    _, lines = _lines(year_2021, tmp_path)
    lines[50], lines[51] = lines[51], lines[50]
    with pytest.raises(InputError, match=":51"):
        meteo.load_meteo(_rewrite(tmp_path, lines))


def test_wrong_row_count(year_2021, tmp_path):
    _, lines = _lines(year_2021, tmp_path)
    with pytest.raises(InputError, match="8760"):
        meteo.load_meteo(_rewrite(tmp_path, lines[:-24]))


def test_bad_number(year_2021, tmp_path):
    _, lines = _lines(year_2021, tmp_path)
    ts, _, dhi, t = lines[3].split(",")
    lines[3] = ",".join([ts, "abc", dhi, t])
    with pytest.raises(InputError, match=":4"):
        meteo.load_meteo(_rewrite(tmp_path, lines))


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        meteo.load_meteo(tmp_path / "nope.csv")
