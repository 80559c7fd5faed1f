/*!
  \file synth.hpp
  \brief Netlist synthesis for locking blocks and host integration.

  Each block side becomes an XOR layer (L = X xor K) feeding a two-level
  sum of products.  Canonical builders carry closed-form covers; blocks
  without one fall back to a minterm expansion of the smaller polarity.
  Multi-input products and sums are emitted as balanced binary trees.
*/

#pragma once

#include "bench.hpp"
#include "block.hpp"

namespace gantisat
{

namespace detail
{

/*! Balanced binary tree over \p wires; the final gate uses \p root_kind
    (normally equal to \p base_kind, or its inverting sibling).
    \p wires must hold at least two entries. */
inline std::string build_tree( Netlist& net, std::vector<std::string> wires,
                               GateKind base_kind, GateKind root_kind,
                               std::string const& prefix, int& counter )
{
  while ( wires.size() > 1 )
  {
    bool const top = wires.size() == 2;
    std::vector<std::string> next;
    for ( size_t i = 0; i + 1 < wires.size(); i += 2 )
    {
      std::string out = prefix + std::to_string( counter++ );
      net.add_gate( top ? root_kind : base_kind, { wires[i], wires[i + 1] }, out );
      next.push_back( out );
    }
    if ( wires.size() & 1 )
      next.push_back( wires.back() );
    wires = std::move( next );
  }
  return wires.front();
}

struct SideSynth
{
  Netlist& net;
  std::string prefix;                 // "f" or "g"
  std::vector<std::string> xor_wires; // L = X xor K, one per bit
  std::vector<std::string> not_wires; // lazily created complements
  int counter = 0;

  std::string literal( int bit, bool positive )
  {
    if ( positive )
      return xor_wires[bit];
    if ( not_wires[bit].empty() )
    {
      not_wires[bit] = prefix + "n" + std::to_string( bit );
      net.add_gate( GateKind::NOT, { xor_wires[bit] }, not_wires[bit] );
    }
    return not_wires[bit];
  }

  /*! Emits the SOP and returns its output wire.  Inversion is folded
      into the root gate (AND tree -> NAND root, OR of products ->
      NOR root) so no trailing inverter appears. */
  std::string emit( int n, SopCover const& cover, bool invert )
  {
    bool const single_cube = cover.size() == 1;
    std::vector<std::string> products;
    for ( auto const& cube : cover )
    {
      std::vector<std::string> lits;
      for ( int b = 0; b < n; ++b )
        if ( ( cube.care >> b ) & 1u )
          lits.push_back( literal( b, ( cube.value >> b ) & 1u ) );
      if ( lits.empty() )
        throw netlist_error( "synthesize: constant product term" );
      if ( lits.size() == 1 )
      {
        products.push_back( lits[0] );
        continue;
      }
      GateKind const root = ( single_cube && invert ) ? GateKind::NAND : GateKind::AND;
      products.push_back( build_tree( net, lits, GateKind::AND, root, prefix + "t", counter ) );
    }
    if ( single_cube )
    {
      // With several literals any inversion sits in the NAND root already.
      if ( cover[0].num_literals() > 1 || !invert )
        return products[0];
      std::string out = prefix + "_out";
      net.add_gate( GateKind::NOT, { products[0] }, out );
      return out;
    }
    GateKind const root = invert ? GateKind::NOR : GateKind::OR;
    return build_tree( net, products, GateKind::OR, root, prefix + "o", counter );
  }
};

inline SopCover minterm_cover( BoolFunc const& fn, bool& invert )
{
  uint64_t const ones = fn.count_ones();
  uint64_t const total = pow2( fn.width() );
  if ( ones == 0 || ones == total )
    throw netlist_error( "synthesize: constant block function" );
  invert = ones > total / 2;
  auto const set = invert ? fn.false_set() : fn.true_set();
  SopCover cover;
  cover.reserve( set.size() );
  for ( auto v : set.values() )
    cover.push_back( Cube{ width_mask( fn.width() ), v } );
  return cover;
}

} // namespace detail

/*! \brief Synthesizes a standalone block netlist.

  Primary inputs are x0..x{n-1}; key inputs keyinput<key_index_offset>
  onward, f keys first.  The block output wire is lock_y, driven by the
  final AND (type-0) or OR (type-1) gate.
*/
inline Netlist synthesize_block( LockBlock const& block, int key_index_offset = 0 )
{
  Netlist net;
  int const n = block.n;
  for ( int i = 0; i < n; ++i )
    net.add_input( "x" + std::to_string( i ) );
  for ( int i = 0; i < 2 * n; ++i )
    net.add_input( std::string( Netlist::key_prefix ) + std::to_string( key_index_offset + i ) );

  auto emit_side = [&]( char const* prefix, BoolFunc const& fn, FuncImpl const& impl,
                        int key_base ) {
    detail::SideSynth side{ net, prefix };
    side.not_wires.assign( n, "" );
    for ( int i = 0; i < n; ++i )
    {
      std::string w = std::string( "l" ) + prefix + std::to_string( i );
      net.add_gate( GateKind::XOR,
                    { "x" + std::to_string( i ),
                      std::string( Netlist::key_prefix ) + std::to_string( key_index_offset + key_base + i ) },
                    w );
      side.xor_wires.push_back( w );
    }
    SopCover cover = impl.cover;
    bool invert = impl.invert;
    if ( cover.empty() )
      cover = detail::minterm_cover( fn, invert );
    return side.emit( n, cover, invert );
  };

  std::string f_out = emit_side( "f", block.f, block.f_impl, 0 );
  std::string g_out = emit_side( "g", block.g, block.g_impl, n );
  net.add_gate( block.type == BlockType::type0 ? GateKind::AND : GateKind::OR,
                { f_out, g_out }, "lock_y" );
  net.add_output( "lock_y" );
  net.finalize();
  return net;
}

/*! \brief Table-free synthesis of the canonical non-complementary design.

  Builds the closed-form netlist directly from the column/cell labels, so
  it works for widths beyond the truth-table cap (used for skew analysis
  at large n).  Default included columns only.
*/
inline Netlist synthesize_canonical_noncomp_netlist( int n, int t, uint64_t f_column,
                                                     uint64_t common_row, int q )
{
  if ( n < 3 || n > 62 || t < 2 || t > n - 1 || q < n - t || q > n - 1 )
    throw std::invalid_argument( "synthesize_canonical_noncomp_netlist: bad parameters" );

  Netlist net;
  for ( int i = 0; i < n; ++i )
    net.add_input( "x" + std::to_string( i ) );
  for ( int i = 0; i < 2 * n; ++i )
    net.add_input( std::string( Netlist::key_prefix ) + std::to_string( i ) );

  auto make_side = [&]( char const* prefix, int key_base ) {
    detail::SideSynth side{ net, prefix };
    side.not_wires.assign( n, "" );
    for ( int i = 0; i < n; ++i )
    {
      std::string w = std::string( "l" ) + prefix + std::to_string( i );
      net.add_gate( GateKind::XOR,
                    { "x" + std::to_string( i ),
                      std::string( Netlist::key_prefix ) + std::to_string( key_base + i ) },
                    w );
      side.xor_wires.push_back( w );
    }
    return side;
  };

  auto f_side = make_side( "f", 0 );
  std::vector<std::string> f_lits;
  for ( int j = 0; j < t; ++j )
    f_lits.push_back( f_side.literal( n - t + j, ( f_column >> j ) & 1u ) );
  std::string f_out = f_lits.size() == 1
                          ? f_lits[0]
                          : detail::build_tree( net, f_lits, GateKind::AND, GateKind::AND,
                                                "ft", f_side.counter );

  auto g_side = make_side( "g", n );
  int const qbit = q - ( n - t );
  std::vector<std::string> g_terms;
  for ( int j = 0; j < t; ++j )
  {
    if ( j == qbit )
      continue;
    g_terms.push_back( g_side.literal( n - t + j, !( ( f_column >> j ) & 1u ) ) );
  }
  std::vector<std::string> cell_lits;
  cell_lits.push_back( g_side.literal( q, ( f_column >> qbit ) & 1u ) );
  for ( int i = 0; i < n - t; ++i )
    cell_lits.push_back( g_side.literal( i, ( common_row >> i ) & 1u ) );
  g_terms.push_back( detail::build_tree( net, cell_lits, GateKind::AND, GateKind::AND,
                                         "gt", g_side.counter ) );
  std::string g_out = g_terms.size() == 1
                          ? g_terms[0]
                          : detail::build_tree( net, g_terms, GateKind::OR, GateKind::OR,
                                                "go", g_side.counter );

  net.add_gate( GateKind::AND, { f_out, g_out }, "lock_y" );
  net.add_output( "lock_y" );
  net.finalize();
  return net;
}

/*! \brief Locks one host output with a block netlist.

  Block primary input i connects to host primary input i (the host must
  have at least as many); the chosen output becomes
  host_value xor block_output, so a right key restores the host function
  exactly.  Block-internal wires are prefixed to avoid capture.
*/
inline Netlist integrate( Netlist const& host, Netlist const& block_net,
                          std::string const& target_output )
{
  if ( !host.has_wire( target_output ) )
    throw netlist_error( "integrate: unknown output name: " + target_output );
  bool is_po = false;
  for ( auto w : host.outputs() )
    is_po |= host.wire_name( w ) == target_output;
  if ( !is_po )
    throw netlist_error( "integrate: wire is not a primary output: " + target_output );
  if ( host.driver( host.wire( target_output ) ) == Netlist::kNoDriver )
    throw netlist_error( "integrate: target output is an input wire" );
  if ( block_net.primary_inputs().size() > host.primary_inputs().size() )
    throw netlist_error( "integrate: host has fewer primary inputs than the block" );
  if ( !host.key_inputs().empty() )
    throw netlist_error( "integrate: host already carries key inputs" );

  Netlist out;
  for ( auto w : host.inputs() )
    out.add_input( host.wire_name( w ) );
  for ( auto w : block_net.key_inputs() )
    out.add_input( block_net.wire_name( w ) );

  std::string host_half = target_output + "_host";
  while ( host.has_wire( host_half ) )
    host_half += "_";
  for ( auto const& g : host.gates() )
  {
    std::vector<std::string> ins;
    for ( auto in : g.inputs )
      ins.push_back( host.wire_name( in ) );
    std::string o = host.wire_name( g.output );
    if ( o == target_output )
      o = host_half;
    out.add_gate( g.kind, ins, o );
  }

  // Block wires, renamed except where they alias host primary inputs.
  std::string const prefix = "lk_";
  auto blk_name = [&]( uint32_t w ) -> std::string {
    for ( size_t i = 0; i < block_net.primary_inputs().size(); ++i )
      if ( block_net.primary_inputs()[i] == w )
        return host.wire_name( host.primary_inputs()[i] );
    for ( auto kw : block_net.key_inputs() )
      if ( kw == w )
        return block_net.wire_name( w );
    return prefix + block_net.wire_name( w );
  };
  for ( auto const& g : block_net.gates() )
  {
    std::vector<std::string> ins;
    for ( auto in : g.inputs )
      ins.push_back( blk_name( in ) );
    out.add_gate( g.kind, ins, blk_name( g.output ) );
  }
  std::string lock_out = blk_name( block_net.outputs()[0] );
  out.add_gate( GateKind::XOR, { host_half, lock_out }, target_output );
  for ( auto w : host.outputs() )
    out.add_output( host.wire_name( w ) );
  out.finalize();
  return out;
}

/*! Host with \p n_inputs primary inputs and a constant-0 output; locking
    it exposes the bare block behavior. */
inline Netlist make_const0_host( int n_inputs )
{
  Netlist net;
  for ( int i = 0; i < n_inputs; ++i )
    net.add_input( "x" + std::to_string( i ) );
  net.add_gate( GateKind::NOT, { "x0" }, "h0" );
  net.add_gate( GateKind::AND, { "x0", "h0" }, "y" );
  net.add_output( "y" );
  net.finalize();
  return net;
}

} // namespace gantisat
