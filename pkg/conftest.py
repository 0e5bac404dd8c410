"""
Configure Django for pytest, the way `manage.py test` does.
"""
import os
import sys
from pathlib import Path

import django

sys.path.insert(0, str(Path(__file__).resolve().parent / 'LsdProject'))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'app.settings')
django.setup()

from django.test.utils import setup_test_environment  # noqa: E402

setup_test_environment()
