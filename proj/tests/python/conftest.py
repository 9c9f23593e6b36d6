import os
import pathlib

import pytest

import iqro_engine

HERE = pathlib.Path(__file__).resolve().parent
PACK_DIR = pathlib.Path(os.environ.get("IQRO_REFERENCE_PACK_DIR", HERE.parents[1] / "packs" / "iqro"))
GOLDEN_DIR = pathlib.Path(os.environ.get("IQRO_GOLDEN_DIR", HERE.parent / "golden"))


@pytest.fixture(scope="session")
def reference():
    return iqro_engine.load_pack_dir(str(PACK_DIR))


@pytest.fixture(scope="session")
def pack(reference):
    return reference[0]
