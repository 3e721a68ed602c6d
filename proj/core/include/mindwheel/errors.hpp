#ifndef MINDWHEEL_ERRORS_HPP
#define MINDWHEEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mindwheel {

// Error taxonomy, mapped to process exit codes by the CLI:
//   UsageError   -> 1   bad flags, bad config keys
//   DataError    -> 2   bad files, bad shapes, bad counts, protocol violations
//   NumericError -> 3   non-finite values where the math guarantees finiteness
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error("usage error: " + msg) {}
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error("numeric error: " + msg) {}
};

class ShapeError : public DataError {
public:
    explicit ShapeError(const std::string& msg) : DataError("shape error: " + msg) {}
};

class CountError : public DataError {
public:
    explicit CountError(const std::string& msg) : DataError("count error: " + msg) {}
};

class LabelError : public DataError {
public:
    explicit LabelError(const std::string& msg) : DataError("label error: " + msg) {}
};

class RangeError : public DataError {
public:
    explicit RangeError(const std::string& msg) : DataError("range error: " + msg) {}
};

// Serial / drive frame violations (bad length, bad checksum, bad code).
class FrameError : public DataError {
public:
    explicit FrameError(const std::string& msg) : DataError("frame error: " + msg) {}
};

// Dataset file violations; carries the offending record index when known.
class RecordError : public DataError {
public:
    RecordError(const std::string& msg, long record_index)
        : DataError("record error: " + msg + " (record " + std::to_string(record_index) + ")"),
          record_index(record_index) {}
    long record_index;
};

class NotFoundError : public DataError {
public:
    explicit NotFoundError(const std::string& msg) : DataError("not found: " + msg) {}
};

}  // namespace mindwheel

#endif
