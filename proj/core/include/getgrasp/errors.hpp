#pragma once

#include <stdexcept>
#include <string>

namespace getgrasp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyMaskError : Error {
  EmptyMaskError() : Error("mask contains no object pixel") {}
};

struct DegenerateContourError : Error {
  using Error::Error;
};

struct InvalidDepthError : Error {
  using Error::Error;
};

struct ZeroAreaError : Error {
  ZeroAreaError() : Error("polygon has non-positive net area") {}
};

struct InvalidStartError : Error {
  using Error::Error;
};

struct DegenerateHullError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& path, long line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what) {}
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct UnreadableImageError : Error {
  using Error::Error;
};

struct NoValidDepthError : Error {
  NoValidDepthError() : Error("no valid depth pixel under the mask") {}
};

struct NoEligibleFaceError : Error {
  using Error::Error;
};

struct DegenerateCorrespondenceError : Error {
  using Error::Error;
};

struct NoFeasibleGraspError : Error {
  using Error::Error;
};

}  // namespace getgrasp
