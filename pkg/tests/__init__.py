#: empty
