"""Web server exposing state records and verification reports."""
