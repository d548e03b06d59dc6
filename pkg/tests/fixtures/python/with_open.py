def read_lines(path):
    with open(path) as fh:
        return fh.readlines()
