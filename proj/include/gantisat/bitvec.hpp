/*!
  \file bitvec.hpp
  \brief Fixed-width bit vectors, truth sets, and binary distance multisets.
*/

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gantisat
{

/*! Maximum supported vector width.  Truth sets and truth tables are
    materialized, so widths beyond this are rejected. */
inline constexpr int max_width = 24;

inline uint32_t width_mask( int width )
{
  return width >= 32 ? 0xffffffffu : ( ( 1u << width ) - 1u );
}

inline uint64_t pow2( int width )
{
  return uint64_t( 1 ) << width;
}

/*! \brief An n-bit vector.

  Bit i of \c value is literal l_i, with l_{width-1} the most significant
  bit.  Decimal 2 at width 4 is [0,0,1,0].
*/
class BitVec
{
public:
  BitVec() = default;

  BitVec( int width, uint32_t value )
      : width_( width ), value_( value )
  {
    if ( width < 1 || width > max_width )
      throw std::invalid_argument( "BitVec: width out of range [1, 24]" );
    if ( value > width_mask( width ) )
      throw std::invalid_argument( "BitVec: value exceeds 2^width" );
  }

  int width() const { return width_; }
  uint32_t value() const { return value_; }
  bool bit( int i ) const { return ( value_ >> i ) & 1u; }

  BitVec operator^( BitVec const& other ) const
  {
    if ( width_ != other.width_ )
      throw std::invalid_argument( "BitVec: XOR of mismatched widths" );
    return BitVec( width_, value_ ^ other.value_ );
  }

  bool operator==( BitVec const& other ) const = default;
  auto operator<=>( BitVec const& other ) const = default;

  /*! Binary string, MSB (l_{width-1}) first. */
  std::string to_string() const
  {
    std::string s;
    for ( int i = width_ - 1; i >= 0; --i )
      s.push_back( bit( i ) ? '1' : '0' );
    return s;
  }

private:
  int width_ = 1;
  uint32_t value_ = 0;
};

/*! \brief A set of n-bit vectors, kept sorted and duplicate-free. */
class TruthSet
{
public:
  TruthSet() = default;

  explicit TruthSet( int width ) : width_( width )
  {
    check_width( width );
  }

  TruthSet( int width, std::vector<uint32_t> members )
      : width_( width ), members_( std::move( members ) )
  {
    check_width( width );
    std::sort( members_.begin(), members_.end() );
    members_.erase( std::unique( members_.begin(), members_.end() ), members_.end() );
    if ( !members_.empty() && members_.back() > width_mask( width_ ) )
      throw std::invalid_argument( "TruthSet: member exceeds 2^width" );
  }

  int width() const { return width_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::vector<uint32_t> const& values() const { return members_; }

  bool contains( uint32_t v ) const
  {
    return std::binary_search( members_.begin(), members_.end(), v );
  }

  void insert( uint32_t v )
  {
    auto it = std::lower_bound( members_.begin(), members_.end(), v );
    if ( it == members_.end() || *it != v )
      members_.insert( it, v );
  }

  /*! Set of all vectors not in this set. */
  TruthSet complement() const
  {
    TruthSet r( width_ );
    r.members_.reserve( pow2( width_ ) - members_.size() );
    size_t j = 0;
    for ( uint64_t v = 0; v < pow2( width_ ); ++v )
    {
      if ( j < members_.size() && members_[j] == v )
        ++j;
      else
        r.members_.push_back( uint32_t( v ) );
    }
    return r;
  }

  /*! Every member XORed with \p k. */
  TruthSet translate( uint32_t k ) const
  {
    TruthSet r( width_ );
    r.members_.reserve( members_.size() );
    for ( auto v : members_ )
      r.members_.push_back( v ^ k );
    std::sort( r.members_.begin(), r.members_.end() );
    return r;
  }

  bool intersects( TruthSet const& other ) const
  {
    size_t i = 0, j = 0;
    while ( i < members_.size() && j < other.members_.size() )
    {
      if ( members_[i] == other.members_[j] )
        return true;
      if ( members_[i] < other.members_[j] )
        ++i;
      else
        ++j;
    }
    return false;
  }

  /*! True iff translating this set by \p k lands entirely outside \p other. */
  bool translate_disjoint( uint32_t k, TruthSet const& other ) const
  {
    for ( auto v : members_ )
      if ( other.contains( v ^ k ) )
        return false;
    return true;
  }

  bool operator==( TruthSet const& other ) const = default;

private:
  static void check_width( int width )
  {
    if ( width < 1 || width > max_width )
      throw std::invalid_argument( "TruthSet: width out of range [1, 24]" );
  }

  int width_ = 1;
  std::vector<uint32_t> members_;
};

/*! \brief Multiset of pairwise binary distances of a set.

  Stored over unordered pairs: each value maps to the number of pairs
  at that distance.  Zero never occurs (distances of distinct elements).
*/
class DistanceMultiset
{
public:
  DistanceMultiset() = default;
  explicit DistanceMultiset( int width ) : width_( width ) {}

  int width() const { return width_; }
  std::map<uint32_t, uint64_t> const& counts() const { return counts_; }

  void add( uint32_t distance )
  {
    assert( distance != 0 );
    ++counts_[distance];
  }

  uint64_t total() const
  {
    uint64_t t = 0;
    for ( auto const& [d, c] : counts_ )
      t += c;
    return t;
  }

  bool operator==( DistanceMultiset const& other ) const
  {
    return width_ == other.width_ && counts_ == other.counts_;
  }

private:
  int width_ = 1;
  std::map<uint32_t, uint64_t> counts_;
};

} // namespace gantisat
