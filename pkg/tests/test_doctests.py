import doctest

import pytest

from sadickit import directive, substitution


@pytest.mark.parametrize("module", [directive, substitution])
def test_docstring_examples(module):
    result = doctest.testmod(module)
    assert result.failed == 0
