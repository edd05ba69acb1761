"""Exact construction and classification of finite set-theoretic pentagon solutions."""

__version__ = "0.1.0"
