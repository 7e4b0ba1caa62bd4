"""ASGI config for the fogbench project (admin for persisted basis runs)."""

import os

from django.core.asgi import get_asgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'fogbench.settings')

application = get_asgi_application()
