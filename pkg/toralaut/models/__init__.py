# toralaut/models/__init__.py
