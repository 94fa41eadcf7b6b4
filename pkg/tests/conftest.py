from hypothesis import HealthCheck, settings

settings.register_profile("integer-heavy", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("integer-heavy")
