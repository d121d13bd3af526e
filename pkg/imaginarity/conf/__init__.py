import os
from contextlib import ContextDecorator
from importlib import import_module

from imaginarity.conf import defaults

ENVIRONMENT_VARIABLE = "IMAGINARITY_SETTINGS_MODULE"


class Settings:
    """
    Settings are looked up in the active ``override_settings`` frames, then in
    the module named by ``IMAGINARITY_SETTINGS_MODULE``, then in
    ``imaginarity.conf.defaults``.
    """

    def __init__(self):
        self._stack = []
        self._user_module = None
        self._user_module_name = None

    @property
    def _overrides(self):
        return self._stack

    def _user_settings(self):
        name = os.environ.get(ENVIRONMENT_VARIABLE)
        if name != self._user_module_name:
            self._user_module = import_module(name) if name else None
            self._user_module_name = name
        return self._user_module

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        for frame in reversed(self._overrides):
            if name in frame:
                return frame[name]
        user = self._user_settings()
        if user is not None and hasattr(user, name):
            return getattr(user, name)
        try:
            return getattr(defaults, name)
        except AttributeError:
            raise AttributeError(f"Unknown setting {name}")


settings = Settings()


class override_settings(ContextDecorator):
    def __init__(self, **values):
        self.values = values

    def __enter__(self):
        settings._overrides.append(self.values)
        return settings

    def __exit__(self, *exc):
        settings._overrides.pop()
        return False
