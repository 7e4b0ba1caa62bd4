"""
WSGI config for the fogbench project.

Only the admin (persisted candidate-basis runs) is served over HTTP.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'fogbench.settings')

application = get_wsgi_application()
