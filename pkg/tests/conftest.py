import io
import sys
from pathlib import Path

import pytest

from hiermine import kernels
from hiermine.codec import load_codebook_files
from hiermine.io import read_dat

sys.path.insert(0, str(Path(__file__).parent))

SAMPLES = Path(__file__).resolve().parents[1] / "src" / "hiermine" / "samples"

SAMPLE_TEXT = (
    "102000\t113001\t135002\n"
    "113102\t124002\t146000\n"
    "102001\t113101\t124202\n"
    "102100\t113001\t135002\n"
    "102000\t113001\t124202\n"
)

SAMPLE_ROWS = [
    (102000, 113001, 135002),
    (113102, 124002, 146000),
    (102001, 113101, 124202),
    (102100, 113001, 135002),
    (102000, 113001, 124202),
]


@pytest.fixture
def sample_data():
    return read_dat(io.StringIO(SAMPLE_TEXT), width=6)


@pytest.fixture
def sample_book():
    """Code tables consistent with the five-row sample transactions."""
    return load_codebook_files(SAMPLES / "categories.tsv", SAMPLES / "brands.tsv",
                               SAMPLES / "packs.tsv")


@pytest.fixture
def milk_book():
    """Category, milk-brand and milk-pack tables."""
    return load_codebook_files(SAMPLES / "milk_categories.tsv", SAMPLES / "milk_brands.tsv",
                               SAMPLES / "milk_packs.tsv")


@pytest.fixture(params=kernels.available())
def kernel(request):
    return kernels.get(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
