"""Test testing utilities."""

import sys

from swallowtail.testing.testing_utils import suppress_output


@suppress_output(suppress_stdout=False, suppress_stderr=False)
def test_suppress_output_false():
    """Test suppress_output method with False inputs."""
    pass


def test_suppress_output_restores_streams():
    """Test suppress_output puts stdout and stderr back afterwards."""
    stdout, stderr = sys.stdout, sys.stderr
    with suppress_output():
        print("hidden")
        assert sys.stdout is not stdout
    assert sys.stdout is stdout
    assert sys.stderr is stderr
