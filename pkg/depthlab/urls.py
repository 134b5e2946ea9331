"""
URL configuration for depthlab project.
"""
from django.urls import path, include

urlpatterns = [
    path('api/', include('geometry.api_urls')),
]
