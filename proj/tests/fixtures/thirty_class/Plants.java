package zoo;

class C15 { C05 neighbour; C15 grow(C03 sun) { return null; } }
class C16 { C06 neighbour; C16 grow(C03 sun) { return null; } }
class C17 { C07 neighbour; C17 grow(C03 sun) { return null; } }
class C18 { C08 neighbour; C18 grow(C03 sun) { return null; } }
class C19 { C09 neighbour; C19 grow(C03 sun) { return null; } }
class C20 { C10 neighbour; C20 grow(C03 sun) { return null; } }
class C21 { C11 neighbour; C21 grow(C03 sun) { return null; } }
class C22 { C12 neighbour; C22 grow(C03 sun) { return null; } }
class C23 { C13 neighbour; C23 grow(C03 sun) { return null; } }
class C24 { C14 neighbour; C24 grow(C03 sun) { return null; } }
class C25 { C15 neighbour; C25 grow(C03 sun) { return null; } }
class C26 { C16 neighbour; C26 grow(C03 sun) { return null; } }
class C27 { C17 neighbour; C27 grow(C03 sun) { return null; } }
class C28 { C18 neighbour; C28 grow(C03 sun) { return null; } }
