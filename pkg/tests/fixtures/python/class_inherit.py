class Animal:
    sound = '...'

    def speak(self):
        return self.sound


class Dog(Animal):
    sound = 'woof'
