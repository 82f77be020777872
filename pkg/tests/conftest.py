from pathlib import Path

import pytest

from nzebkit import lighting, pvdesign
from nzebkit.meteo import load_meteo
from nzebkit.pipeline import Pipeline
from nzebkit.project import load_project

ROOT = Path(__file__).resolve().parents[1]
TSU_DIR = ROOT / "fixtures" / "tsu-gymnasium"
TSU_PROJECT = TSU_DIR / "tsu.project.yaml"
TSU_METEO = TSU_DIR / "tarlac-synthetic-2020.csv"

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def court_room():
    return lighting.RoomLightingModel(
        length=31, width=19.51, ceiling_height=10.6, fixture_mounting_height=7.9,
        reflectances=lighting.Reflectances(0.80, 0.50, 0.35),
    )


@pytest.fixture(scope="session")
def high_bay():
    return lighting.LuminaireSpec(
        lamps_per_fixture=1, lumens_per_lamp=26000, coefficient_of_utilization=0.805,
        lamp_lumen_depreciation=0.7, luminaire_dirt_depreciation=0.88, input_power_per_fixture=200,
    )


@pytest.fixture(scope="session")
def lg395():
    return pvdesign.PVModuleSpec("LG 395 Q1C-A6", p_stc=395, v_mp=36.1, v_oc=42.8, i_mp=10.94, i_sc=11.6,
                                 gamma_p=-0.29, beta_voc=-0.24, noct=44, module_area=1.813)


@pytest.fixture(scope="session")
def lg400():
    return pvdesign.PVModuleSpec("LG 400 Q1C-A6", p_stc=400, v_mp=36.6, v_oc=43.0, i_mp=10.93, i_sc=11.65,
                                 gamma_p=-0.29, beta_voc=-0.24, noct=44, module_area=1.813)


@pytest.fixture(scope="session")
def sofar():
    return pvdesign.InverterSpec("SOFAR 40000TL", p_ac_nominal=40000, mppt_v_min=250, mppt_v_max=960,
                                 v_dc_max=960, efficiency=0.97)


@pytest.fixture(scope="session")
def roof_faces():
    return [pvdesign.Orientation(15, -8), pvdesign.Orientation(15, 172)]


@pytest.fixture(scope="session")
def tsu_project():
    return load_project(TSU_PROJECT)


@pytest.fixture(scope="session")
def tsu_meteo():
    return load_meteo(TSU_METEO)


@pytest.fixture(scope="session")
def tsu_pipeline(tsu_project):
    return Pipeline(tsu_project, TSU_METEO)
