import pytest

from helpers import SequenceStream


@pytest.fixture
def sequence_stream():
    return SequenceStream
