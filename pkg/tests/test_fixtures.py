import hashlib
import os

import pytest

from tests.conftest import FIXTURES_DIR

CHECKSUMS = {
    "e7-p5": "ea8ab5b3492b2d9a40f2bc48a0305e7679208f0fae1b9e488b0dd974ddd7d7ec",
    "e7-p6": "6750f7776a3ee38a3b91bd7b290fc6137ce3ea6ce6b31c701419a0d797747414",
}


@pytest.mark.parametrize("name, digest", sorted(CHECKSUMS.items()))
def test_fixture_checksums(name, digest):
    with open(os.path.join(FIXTURES_DIR, f"{name}.poly"), "rb") as handle:
        assert hashlib.sha256(handle.read()).hexdigest() == digest
