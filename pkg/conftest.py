import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'graphseg.settings')
django.setup()
