# Loaded with Django so shared_task in moebius.tasks binds to this app.
from .celery import app as celery_app

__all__ = ('celery_app',)
