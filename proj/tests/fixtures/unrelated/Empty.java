package empty;

class E01 {}
class E02 {}
class E03 {}
class E04 {}
class E05 {}
class E06 {}
class E07 {}
class E08 {}
class E09 {}
class E10 {}
class E11 {}
class E12 {}
