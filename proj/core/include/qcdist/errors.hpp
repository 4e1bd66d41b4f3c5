#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcdist {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed mesh file content. `line()` is 1-based, 0 when not line-specific.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IOError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid input (index out of range, repeated index,
/// connectivity mismatch, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A face whose area or an edge length falls below the relative threshold.
class DegenerateFace : public ValidationError {
public:
    DegenerateFace(std::size_t face, const std::string& which, const std::string& detail)
        : ValidationError(describe(face, which, detail)), face_(face), which_(which) {}

    std::size_t face() const noexcept { return face_; }
    /// "source", "target", or empty when no mesh context is known.
    const std::string& which() const noexcept { return which_; }

private:
    static std::string describe(std::size_t face, const std::string& which,
                                const std::string& detail) {
        std::string s = "degenerate face " + std::to_string(face);
        if (!which.empty()) s += " in " + which + " mesh";
        if (!detail.empty()) s += ": " + detail;
        return s;
    }
    std::size_t face_;
    std::string which_;
};

class NonManifoldEdge : public ValidationError {
public:
    NonManifoldEdge(std::size_t v0, std::size_t v1, std::size_t faceCount)
        : ValidationError("non-manifold edge (" + std::to_string(v0) + ", " + std::to_string(v1) +
                          ") shared by " + std::to_string(faceCount) + " faces"),
          v0_(v0), v1_(v1) {}
    std::size_t v0() const noexcept { return v0_; }
    std::size_t v1() const noexcept { return v1_; }

private:
    std::size_t v0_, v1_;
};

/// Wrong genus or boundary count for a disk parameterization.
class TopologyError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// f_z vanishes relative to f_zbar: the local map is anti-conformal or collapsed.
class VanishingFz : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Linear model with |A| <= |B|.
class DegenerateModel : public DomainError {
public:
    using DomainError::DomainError;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

}  // namespace qcdist
