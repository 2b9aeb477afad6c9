import os
from celery import Celery
from kombu import Exchange, Queue

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')

app = Celery('moebius')

app.config_from_object('django.conf:settings', namespace='CELERY')

moebius_exchange = Exchange('moebius_exchange', type='topic', durable=True)

app.conf.task_queues = (
    Queue('totals_queue', moebius_exchange, routing_key='moebius.scan.totals'),
    Queue('bounds_queue', moebius_exchange, routing_key='moebius.scan.bounds'),
)

app.conf.task_routes = {
    'moebius.tasks.block_totals': {
        'queue': 'totals_queue',
        'routing_key': 'moebius.scan.totals'
    },
    'moebius.tasks.scan_bound_block': {
        'queue': 'bounds_queue',
        'routing_key': 'moebius.scan.bounds'
    },
}

app.conf.update(
    task_serializer='json',
    accept_content=['json'],
    result_serializer='json',
    timezone='UTC',
    enable_utc=True,
)

app.autodiscover_tasks()
