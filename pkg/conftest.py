import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'doodle_census_project.settings')
django.setup()
