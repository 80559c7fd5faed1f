#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gantisat
{

/*! \brief Exact rational number with 64-bit reduced representation. */
class Rational
{
public:
  Rational() = default;
  Rational( int64_t value ) : num_( value ), den_( 1 ) {}

  Rational( int64_t num, int64_t den )
  {
    if ( den == 0 )
      throw std::invalid_argument( "Rational: zero denominator" );
    if ( den < 0 )
    {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd( num < 0 ? -num : num, den );
    num_ = g ? num / g : num;
    den_ = g ? den / g : 1;
  }

  /*! Reduces a 128-bit fraction; throws if the result does not fit. */
  static Rational from_wide( __int128 num, __int128 den )
  {
    if ( den == 0 )
      throw std::invalid_argument( "Rational: zero denominator" );
    if ( den < 0 )
    {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while ( b )
    {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if ( a )
    {
      num /= a;
      den /= a;
    }
    if ( num > INT64_MAX || num < INT64_MIN || den > INT64_MAX )
      throw std::overflow_error( "Rational: reduced value exceeds 64 bits" );
    Rational r;
    r.num_ = int64_t( num );
    r.den_ = int64_t( den );
    return r;
  }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  double to_double() const { return double( num_ ) / double( den_ ); }

  std::string to_string() const
  {
    if ( den_ == 1 )
      return std::to_string( num_ );
    return std::to_string( num_ ) + "/" + std::to_string( den_ );
  }

  Rational operator+( Rational const& o ) const
  {
    return from_wide( __int128( num_ ) * o.den_ + __int128( o.num_ ) * den_,
                      __int128( den_ ) * o.den_ );
  }

  Rational operator*( Rational const& o ) const
  {
    return from_wide( __int128( num_ ) * o.num_, __int128( den_ ) * o.den_ );
  }

  bool operator==( Rational const& o ) const { return num_ == o.num_ && den_ == o.den_; }

  bool operator<( Rational const& o ) const
  {
    return __int128( num_ ) * o.den_ < __int128( o.num_ ) * den_;
  }
  bool operator>=( Rational const& o ) const { return !( *this < o ); }

private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

} // namespace gantisat
