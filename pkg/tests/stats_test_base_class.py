import math
from typing import Any

from .fixtures_utils import FixturesUtils


def method_test(correct_value: Any, reported_value: Any) -> None:
    if isinstance(correct_value, float):
        assert math.isclose(reported_value, correct_value)
    elif isinstance(correct_value, list):
        assert list(reported_value) == correct_value
    else:
        assert reported_value == correct_value


class StatsTestBaseClass:
    """
    Base class for report testing. Testing classes extending this base class
    may override `fixtures_path` to test another fixture directory.
    """
    fixtures_path = "tests/fixtures/"

    def test_report(self, subtests) -> None:
        """
        Tests `report` of every facet fixture against its data fixture.

        :param subtests: Subtests module, passed by pytest.
        """
        f_utils = FixturesUtils(fixtures_path=self.fixtures_path)
        objects_to_test = f_utils.get_stats_objects_from_fixtures()
        assert objects_to_test
        for obj in objects_to_test:
            name = f_utils.name_of(obj.name)
            reported = obj.report()
            correct = f_utils.get_data_fixture(name)
            assert correct is not None
            assert correct.keys() == reported.keys()
            for method in correct.keys():
                with subtests.test(msg=f"{name}: {method}"):
                    method_test(correct[method], reported[method])
