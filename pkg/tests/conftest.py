import os

os.environ.setdefault("IMAGINARITY_SETTINGS_MODULE", "tests.settings.default")
