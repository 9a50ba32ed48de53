"""Test-suite anchor; keeps the tests directory on sys.path for util imports."""
