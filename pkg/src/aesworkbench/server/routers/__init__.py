"""Routers for the API.

This module includes the separate routers used by the application.

"""
