from django.apps import AppConfig


class CoreConfig(AppConfig):
    name = "core"

    def ready(self):
        from django.conf import settings
        from core.series import PASCAL

        PASCAL.max_cached_rows = settings.GAMMA_PASCAL_CACHE_ROWS
