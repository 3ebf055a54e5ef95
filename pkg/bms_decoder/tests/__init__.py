import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "bms_decoder.test_settings")
django.setup()
