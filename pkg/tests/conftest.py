import json
import pathlib

import pytest

from propstage.config import build_presentation, load_raw_config

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def read_jsonl(path):
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def read_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


@pytest.fixture(scope="session")
def wine_presentation():
    return build_presentation(load_raw_config(FIXTURES / "wine.config.json"))


@pytest.fixture(scope="session")
def ev_presentation():
    return build_presentation(load_raw_config(FIXTURES / "ev.config.json"))


@pytest.fixture(scope="session")
def fruit_presentation():
    return build_presentation(load_raw_config(FIXTURES / "fruit.config.json"))
