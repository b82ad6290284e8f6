#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mlse {

// Base class for every runtime failure this library raises on bad input or
// bad data. Violations of call contracts (argument domains) throw
// std::invalid_argument instead and are not meant to be caught in normal
// operation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A keystream site does not fit the fixed counter layout.
class AddressingError : public Error {
public:
    using Error::Error;
};

// Bitstream ended early or contained a malformed code. Carries the bit
// offset at which parsing failed.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::uint64_t bit_offset)
        : Error(msg + " (bit offset " + std::to_string(bit_offset) + ")"),
          bit_offset_(bit_offset) {}

    std::uint64_t bit_offset() const { return bit_offset_; }

private:
    std::uint64_t bit_offset_ = 0;
};

// Bitstream parsed but describes an impossible syntax structure.
class CorruptStreamError : public ParseError {
public:
    using ParseError::ParseError;
};

// Container-level problem: bad magic, bad version, inconsistent lengths.
// Carries the byte offset of the offending field.
class FormatError : public Error {
public:
    FormatError(const std::string& msg, std::uint64_t byte_offset)
        : Error(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}

    std::uint64_t byte_offset() const { return byte_offset_; }

private:
    std::uint64_t byte_offset_ = 0;
};

// Raw video ingestion failure (short file, unreadable path).
class IngestError : public Error {
public:
    using Error::Error;
};

// A computed value left its representable range (pathological input).
class RangeError : public Error {
public:
    using Error::Error;
};

}  // namespace mlse
