import pytest

from covertlat import placement


@pytest.fixture(scope="session")
def emerald():
    return placement.load_device(placement.bundled_device_path("emerald"))


@pytest.fixture(scope="session")
def ibm_fez():
    return placement.load_device(placement.bundled_device_path("ibm_fez"))


@pytest.fixture(scope="session")
def square30():
    return placement.synthetic_square_device(30, 30, "square30")


@pytest.fixture(scope="session")
def heavyhex4():
    return placement.synthetic_heavyhex_device(4, "heavyhex4")
