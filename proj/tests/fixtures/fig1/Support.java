package io;

class String {
}

class File {
}

class FileReader {
    protected File file;

    String readLine() {
        return null;
    }
}

interface StringSource {
    String readString();
}
