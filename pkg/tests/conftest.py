"""
测试公共配置

--profile 选择运行配置档，标记高于所选档位的用例被跳过。
"""

import random

import pytest

from src.core.settings import PROFILES
from src.fields.galois import field_of_order

SMALL_ORDERS = (2, 3, 4, 5, 7, 8, 9)


def pytest_addoption(parser):
    parser.addoption("--profile", choices=PROFILES, default="quick", help="运行配置档")


def pytest_collection_modifyitems(config, items):
    level = PROFILES.index(config.getoption("--profile"))
    for item in items:
        for rank, name in enumerate(PROFILES):
            if rank > level and item.get_closest_marker(name):
                item.add_marker(pytest.mark.skip(reason=f"需要 --profile {name}"))
                break


@pytest.fixture
def profile(request) -> str:
    return request.config.getoption("--profile")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240101)


@pytest.fixture(params=SMALL_ORDERS, ids=lambda q: f"GF{q}")
def small_field(request):
    return field_of_order(request.param)


@pytest.fixture
def gf4():
    return field_of_order(4)


@pytest.fixture
def gf9():
    return field_of_order(9)
