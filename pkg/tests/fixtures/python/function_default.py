def greet(name, punct='!'):
    return 'hi ' + name + punct
