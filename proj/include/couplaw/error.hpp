#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace couplaw {

// Root of every exception thrown by the library. The CLI maps these onto
// exit codes; the python module maps them onto ValueError/RuntimeError.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedSource : public Error {
public:
    MalformedSource(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class DuplicateClass : public Error {
public:
    explicit DuplicateClass(std::string name)
        : Error("duplicate class declaration: " + name), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("no classes found") {}
};

class FormatError : public Error {
public:
    FormatError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnknownRelationship : public Error {
public:
    explicit UnknownRelationship(const std::string& name)
        : Error("unknown relationship: " + name) {}
};

class EmptyInput : public Error {
public:
    EmptyInput() : Error("empty input") {}
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class ZeroVariance : public Error {
public:
    explicit ZeroVariance(std::string label)
        : Error("zero variance in column: " + label), label_(std::move(label)) {}

    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

}  // namespace couplaw
