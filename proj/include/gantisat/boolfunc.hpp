/*!
  \file boolfunc.hpp
  \brief Tabulated Boolean functions and two-level covers.
*/

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "bitvec.hpp"

namespace gantisat
{

/*! \brief A product term over literals l_0 .. l_{n-1}.

  Every bit set in \c care constrains the corresponding literal to the
  matching bit of \c value; bits outside \c care are free.
*/
struct Cube
{
  uint32_t care = 0;
  uint32_t value = 0;

  bool eval( uint32_t x ) const { return ( x & care ) == ( value & care ); }
  int num_literals() const { return std::popcount( care ); }
};

/*! Disjunction of product terms. */
using SopCover = std::vector<Cube>;

/*! \brief A completely specified Boolean function as a packed truth table. */
class BoolFunc
{
public:
  BoolFunc() = default;

  explicit BoolFunc( int width )
      : width_( width ), table_( word_count( width ), 0 )
  {
    if ( width < 1 || width > max_width )
      throw std::invalid_argument( "BoolFunc: width out of range [1, 24]" );
  }

  static BoolFunc from_true_set( TruthSet const& t )
  {
    BoolFunc f( t.width() );
    for ( auto v : t.values() )
      f.set( v );
    return f;
  }

  static BoolFunc from_cover( int width, SopCover const& cover, bool invert = false )
  {
    BoolFunc f( width );
    for ( uint64_t x = 0; x < pow2( width ); ++x )
    {
      bool on = false;
      for ( auto const& c : cover )
        if ( c.eval( uint32_t( x ) ) )
        {
          on = true;
          break;
        }
      if ( on != invert )
        f.set( uint32_t( x ) );
    }
    return f;
  }

  int width() const { return width_; }

  bool eval( uint32_t x ) const
  {
    return ( table_[x >> 6] >> ( x & 63u ) ) & 1u;
  }

  void set( uint32_t x, bool v = true )
  {
    if ( v )
      table_[x >> 6] |= uint64_t( 1 ) << ( x & 63u );
    else
      table_[x >> 6] &= ~( uint64_t( 1 ) << ( x & 63u ) );
  }

  uint64_t count_ones() const
  {
    uint64_t n = 0;
    for ( size_t w = 0; w < table_.size(); ++w )
      n += std::popcount( masked_word( w ) );
    return n;
  }

  TruthSet true_set() const
  {
    std::vector<uint32_t> v;
    v.reserve( count_ones() );
    for ( uint64_t x = 0; x < pow2( width_ ); ++x )
      if ( eval( uint32_t( x ) ) )
        v.push_back( uint32_t( x ) );
    return TruthSet( width_, std::move( v ) );
  }

  TruthSet false_set() const
  {
    std::vector<uint32_t> v;
    v.reserve( pow2( width_ ) - count_ones() );
    for ( uint64_t x = 0; x < pow2( width_ ); ++x )
      if ( !eval( uint32_t( x ) ) )
        v.push_back( uint32_t( x ) );
    return TruthSet( width_, std::move( v ) );
  }

  BoolFunc operator~() const
  {
    BoolFunc r( width_ );
    for ( size_t w = 0; w < table_.size(); ++w )
      r.table_[w] = ~table_[w];
    r.mask_top();
    return r;
  }

  bool operator==( BoolFunc const& other ) const
  {
    if ( width_ != other.width_ )
      return false;
    for ( size_t w = 0; w < table_.size(); ++w )
      if ( masked_word( w ) != other.masked_word( w ) )
        return false;
    return true;
  }

private:
  static size_t word_count( int width )
  {
    return size_t( ( pow2( width ) + 63 ) / 64 );
  }

  uint64_t masked_word( size_t w ) const
  {
    uint64_t word = table_[w];
    if ( width_ < 6 && w == 0 )
      word &= ( uint64_t( 1 ) << pow2( width_ ) ) - 1;
    return word;
  }

  void mask_top()
  {
    if ( width_ < 6 )
      table_[0] &= ( uint64_t( 1 ) << pow2( width_ ) ) - 1;
  }

  int width_ = 1;
  std::vector<uint64_t> table_;
};

} // namespace gantisat
