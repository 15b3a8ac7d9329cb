import pytest

pytest.register_assert_rewrite("tests.stats_test_base_class")
