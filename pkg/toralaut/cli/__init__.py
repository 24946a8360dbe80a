# toralaut/cli/__init__.py
