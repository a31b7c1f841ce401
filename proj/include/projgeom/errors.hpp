#pragma once

#include <stdexcept>
#include <string>

#include "projgeom/tensors.hpp"

namespace projgeom {

class GeometryError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A field was evaluated (or an integration segment passed) outside its domain.
class DomainError : public GeometryError
{
public:
  DomainError(const std::string& what, Point where) : GeometryError(what), location(where) {}
  Point location;
};

// Metric failed the leading-principal-minor test.
class DegenerateMetricError : public GeometryError
{
public:
  using GeometryError::GeometryError;
};

// A stated hypothesis of an operation does not hold (e.g. non-symmetric Ricci tensor).
class PreconditionError : public GeometryError
{
public:
  using GeometryError::GeometryError;
};

class IntegrationError : public GeometryError
{
public:
  IntegrationError(const std::string& what, Point where, double param)
      : GeometryError(what), location(where), t(param)
  {
  }
  Point location;
  double t;
};

class NotProjectivelyFlatError : public GeometryError
{
public:
  NotProjectivelyFlatError(const std::string& what, double sup_y) : GeometryError(what), sup_y(sup_y) {}
  double sup_y;
};

class DegenerateFrameError : public GeometryError
{
public:
  using GeometryError::GeometryError;
};

// Homogeneous point lies on the line at infinity of the affine chart.
class ChartError : public GeometryError
{
public:
  using GeometryError::GeometryError;
};

class DegenerateParamsError : public GeometryError
{
public:
  using GeometryError::GeometryError;
};

}  // namespace projgeom
