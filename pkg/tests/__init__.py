pass