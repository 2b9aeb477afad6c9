from django.apps import AppConfig


class MoebiusConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'moebius'
    verbose_name = 'Moebius summatory functions'
