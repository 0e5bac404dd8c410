"""
Test the project settings.
"""
from django.apps import apps
from django.conf import settings
from django.test import SimpleTestCase


class SettingsTests(SimpleTestCase):
    """Test the project runs without a database."""

    def test_no_database(self):
        self.assertEqual(settings.DATABASES, {})
        self.assertFalse(settings.is_overridden('DEFAULT_AUTO_FIELD'))

    def test_apps_define_no_models(self):
        """Test no toolkit app declares models or a primary key type."""
        for name in ('core', 'blocks', 'ilp', 'lp', 'bnb', 'algos', 'harness'):
            config = apps.get_app_config(name)

            self.assertEqual(list(config.get_models()), [])
            self.assertNotIn('default_auto_field', type(config).__dict__)
