#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace climattn {

// Base for every domain failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DateOutOfRange : public Error {
public:
    explicit DateOutOfRange(std::vector<std::string> ids)
        : Error(make_message(ids)), ids_(std::move(ids)) {}
    const std::vector<std::string>& ids() const noexcept { return ids_; }

private:
    static std::string make_message(const std::vector<std::string>& ids) {
        std::string msg = "documents dated outside the sanity window:";
        for (const auto& id : ids) msg += " " + id;
        return msg;
    }
    std::vector<std::string> ids_;
};

class ZeroVariance : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class NonPositiveMean : public Error {
public:
    using Error::Error;
};

class InsufficientOverlap : public Error {
public:
    using Error::Error;
};

class InsufficientSample : public Error {
public:
    using Error::Error;
};

class SingularDesign : public Error {
public:
    SingularDesign(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class InvalidGame : public Error {
public:
    using Error::Error;
};

class UnbalancedPanel : public Error {
public:
    using Error::Error;
};

}  // namespace climattn
