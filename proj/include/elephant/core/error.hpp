// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace elephant {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---- ingest ----------------------------------------------------------------

class UnsupportedDirective : public Error {
public:
  UnsupportedDirective(std::string name, int line)
      : Error("unsupported directive '" + name + "' at line " + std::to_string(line)),
        name(std::move(name)), line(line) {}
  std::string name;
  int line;
};

class SyntaxError : public Error {
public:
  SyntaxError(int line, std::string expected)
      : Error("syntax error at line " + std::to_string(line) + ": expected " + expected),
        line(line), expected(std::move(expected)) {}
  int line;
  std::string expected;
};

class UnbalancedBlock : public Error {
public:
  explicit UnbalancedBlock(int line)
      : Error("unbalanced block at line " + std::to_string(line)), line(line) {}
  int line;
};

class MissingInclude : public Error {
public:
  explicit MissingInclude(std::string path) : Error("missing include: " + path), path(std::move(path)) {}
  std::string path;
};

class NotPaired : public Error {
public:
  explicit NotPaired(std::size_t triangleIndex)
      : Error("triangle " + std::to_string(triangleIndex) + " does not pair into a quad"),
        triangleIndex(triangleIndex) {}
  std::size_t triangleIndex;
};

class BadMagic : public Error {
public:
  BadMagic() : Error("bad magic") {}
};

class UnsupportedVersion : public Error {
public:
  UnsupportedVersion(uint32_t found, uint32_t expected)
      : Error("unsupported version " + std::to_string(found) + " (expected " + std::to_string(expected) + ")"),
        found(found), expected(expected) {}
  uint32_t found, expected;
};

class TruncatedStream : public Error {
public:
  explicit TruncatedStream(uint64_t offset)
      : Error("truncated stream at offset " + std::to_string(offset)), offset(offset) {}
  uint64_t offset;
};

class MismatchedScenes : public Error {
public:
  using Error::Error;
};

class InvalidScene : public Error {
public:
  using Error::Error;
};

// ---- scene -----------------------------------------------------------------

class SpecOutOfRange : public Error {
public:
  using Error::Error;
};

// ---- accel -----------------------------------------------------------------

class EmptyInput : public Error {
public:
  EmptyInput() : Error("BVH build requires at least one primitive") {}
};

// ---- shade -----------------------------------------------------------------

class FaceIdOutOfRange : public Error {
public:
  FaceIdOutOfRange(uint32_t faceId, uint32_t faceCount)
      : Error("face id " + std::to_string(faceId) + " out of range (" + std::to_string(faceCount) + " faces)"),
        faceId(faceId), faceCount(faceCount) {}
  uint32_t faceId, faceCount;
};

class TextureIoError : public Error {
public:
  TextureIoError(std::string path, const std::string &why)
      : Error("texture i/o error for '" + path + "': " + why), path(std::move(path)) {}
  std::string path;
};

// ---- render ----------------------------------------------------------------

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

// ---- dfb -------------------------------------------------------------------

class ZeroWorkers : public Error {
public:
  ZeroWorkers() : Error("at least one worker is required") {}
};

class ProtocolError : public Error {
public:
  using Error::Error;
};

class SceneHashMismatch : public Error {
public:
  SceneHashMismatch() : Error("scene content hash mismatch") {}
};

class WorkerLost : public Error {
public:
  explicit WorkerLost(uint32_t workerId)
      : Error("worker " + std::to_string(workerId) + " lost"), workerId(workerId) {}
  uint32_t workerId;
};

class BindFailure : public Error {
public:
  using Error::Error;
};

} // namespace elephant
