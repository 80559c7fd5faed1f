/*!
  \file oracle.hpp
  \brief The activated-chip model: a netlist answering input queries.
*/

#pragma once

#include <optional>

#include "netlist.hpp"

namespace gantisat
{

/*! \brief Deterministic query oracle.

  Wraps either a key-free host netlist or a locked netlist with its key
  fixed.  query(x) returns the correct primary outputs for input word x
  (bit i feeds primary input i; output bit j is primary output j).
*/
class Oracle
{
public:
  static Oracle from_host( Netlist host )
  {
    if ( !host.key_inputs().empty() )
      throw netlist_error( "Oracle: host netlist carries key inputs" );
    Oracle o;
    o.net_ = std::move( host );
    return o;
  }

  static Oracle from_locked( Netlist locked, uint64_t key_bits )
  {
    Oracle o;
    o.net_ = std::move( locked );
    o.key_bits_ = key_bits;
    return o;
  }

  size_t num_primary_inputs() const { return net_.primary_inputs().size(); }
  size_t num_outputs() const { return net_.outputs().size(); }
  Netlist const& netlist() const { return net_; }

  uint64_t query( uint64_t x ) const { return net_.eval( x, key_bits_ ); }

  /*! 64 queries at once; \p pi_lanes aligned with primary inputs. */
  uint64_t query_packed_single_output( std::span<uint64_t const> pi_lanes ) const
  {
    std::vector<uint64_t> keys( net_.key_inputs().size() );
    for ( size_t i = 0; i < keys.size(); ++i )
      keys[i] = ( key_bits_ >> i ) & 1u ? ~uint64_t( 0 ) : 0;
    auto val = net_.simulate_packed( pi_lanes, keys );
    return val[net_.outputs()[0]];
  }

private:
  Netlist net_;
  uint64_t key_bits_ = 0;
};

/*! Lane word for input index \p i when simulating the 64 consecutive
    patterns base..base+63 (base must be 64-aligned). */
inline uint64_t sweep_lane( int i, uint64_t base )
{
  static constexpr uint64_t magic[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull
  };
  if ( i < 6 )
    return magic[i];
  return ( base >> i ) & 1u ? ~uint64_t( 0 ) : 0;
}

} // namespace gantisat
