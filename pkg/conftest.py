"""Pytest wiring: mirror test_app/manage.py so the suite runs under pytest."""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "test_app"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "test_app.settings")

import django  # noqa: E402

django.setup()
