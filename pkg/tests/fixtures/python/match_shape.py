def area(shape):
    match shape:
        case ('circle', r):
            return 3.14159 * r * r
        case ('rect', w, h):
            return w * h
        case _:
            return 0
