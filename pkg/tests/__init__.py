"""
Unit tests for Telegram training bot
"""
