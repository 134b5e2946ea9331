"""
WSGI entry point serving the depthlab HTTP API (verify, depth, bounds).
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'depthlab.settings')

application = get_wsgi_application()
