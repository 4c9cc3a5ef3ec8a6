"""
HTTP face of the community store: route translation, query execution, request
accounting and the aiohttp application.
"""
