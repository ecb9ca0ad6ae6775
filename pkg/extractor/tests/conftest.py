import json
import sys
from contextlib import contextmanager

import numpy as np
import pytest
from PIL import Image

from rehark_extractor import SeededProjectionEncoder

CLASS_NAMES = ("heron", "kestrel", "magpie", "osprey", "plover")

GPT3_DESCRIPTIONS = {
    "heron": ["a tall wading bird with a long neck", "grey plumage beside water"],
    "kestrel": ["a small falcon hovering over fields", "pointed wings and a barred tail"],
    "magpie": ["a black and white bird with a long tail", "iridescent wing feathers"],
    "osprey": ["a fish-eating raptor over a lake", "white underparts and dark eye stripe"],
    "plover": ["a small shore bird on the sand", "short bill and banded chest"],
}


@pytest.fixture(scope="session")
def dataset_dir(tmp_path_factory):
    """Ten deterministic images (two per class) plus split and prompt files."""
    root = tmp_path_factory.mktemp("birds")
    train, val, test = [], [], []
    for label, name in enumerate(CLASS_NAMES):
        (root / name).mkdir()
        for idx in range(2):
            rel = f"{name}/{idx}.png"
            rng = np.random.default_rng([label, idx])
            pixels = rng.integers(0, 256, size=(24, 24, 3), dtype=np.uint8)
            Image.fromarray(pixels, mode="RGB").save(root / rel)
            train.append([rel, label, name])
        val.append([f"{name}/0.png", label, name])
        test.append([f"{name}/1.png", label, name])

    split_path = root / "split.json"
    split_path.write_text(json.dumps({"train": train, "val": val, "test": test}))
    gpt3_path = root / "gpt3.json"
    gpt3_path.write_text(json.dumps(GPT3_DESCRIPTIONS))
    return root


@pytest.fixture(scope="session")
def split_path(dataset_dir):
    return dataset_dir / "split.json"


@pytest.fixture(scope="session")
def gpt3_path(dataset_dir):
    return dataset_dir / "gpt3.json"


@pytest.fixture(scope="session")
def encoder():
    return SeededProjectionEncoder(width=32)


@pytest.fixture
def report_line(request):
    """Write one status line per criterion past pytest's output capture."""
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def write(name: str, status: str) -> None:
        line = f"[acceptance] {name}: {status}\n"
        if capman is None:
            sys.__stdout__.write(line)
            sys.__stdout__.flush()
        else:
            with capman.global_and_fixture_disabled():
                sys.stdout.write(line)
                sys.stdout.flush()

    return write


@pytest.fixture
def criterion(report_line):
    @contextmanager
    def run(name: str):
        try:
            yield
        except Exception:
            report_line(name, "FAIL")
            raise
        report_line(name, "PASS")

    return run
