import os

from hypothesis import HealthCheck, settings

# every property runs at least 1000 cases from a fixed seed
settings.register_profile(
    "qtrunc",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("qtrunc")


def pytest_configure(config):
    os.environ.setdefault("QTRUNC_CACHE_DIR", str(config.rootpath / ".pytest_cache" / "qtrunc"))
