public class Color02 {
    void paint(Workbook wb, Cell cell) {
        CellStyle style = wb.createCellStyle();
        style.setFillPattern(FillPatternType.SOLID_FOREGROUND);
        style.setFillForegroundColor((short) 42);
        cell.setCellStyle(style);
    }
}
