"""
URL configuration for API endpoints.
"""
from django.urls import path
from . import api_views

urlpatterns = [
    path('verify/', api_views.verify, name='verify'),
    path('depth/', api_views.depth, name='depth'),
    path('bounds/', api_views.bounds, name='bounds'),
]
